public class Validator {
    private int failures;

    public void admit(String token, boolean strict) {
        if (token == null) {
            failures++;
            throw new IllegalStateException("missing token");
        } else if (strict && token.isEmpty()) {
            failures++;
            throw new IllegalStateException("empty token");
        }
        accept(token);
    }

    public void readmit(String token, boolean strict) {
        if (token == null) {
            failures++;
            throw new IllegalStateException("missing token");
        } else if (strict && token.isEmpty()) {
            failures++;
            throw new IllegalStateException("empty token");
        }
        log(token);
    }

    private void accept(String token) {
    }

    private void log(String token) {
    }
}
