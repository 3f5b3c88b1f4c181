public class Loader {
    private int errors;

    public String fetch(String path) {
        String data = "";
        try {
            data = read(path);
        } catch (Exception e) {
            errors++;
            data = "";
        }
        publish(data);
        return data;
    }

    public String refetch(String path) {
        String data = "";
        try {
            data = read(path);
        } catch (Exception e) {
            errors++;
            data = "";
        }
        return data + "!";
    }

    private String read(String path) {
        return path;
    }

    private void publish(String data) {
    }
}
