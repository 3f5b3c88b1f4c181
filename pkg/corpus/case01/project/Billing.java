public class Billing {
    private int balance;

    public int settle(int[] charges) {
        int acc = 0;
        for (int c : charges) {
            if (c > 0) {
                acc += c;
            }
        }
        balance = acc;
        return acc;
    }

    public int preview(int[] charges) {
        int acc = 0;
        for (int c : charges) {
            if (c > 0) {
                acc += c;
            }
        }
        return acc * 2;
    }

    public void clear() {
        balance = 0;
    }

    public int peek() {
        return balance;
    }
}
