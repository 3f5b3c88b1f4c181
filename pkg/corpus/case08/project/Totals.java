public class Totals {
    private int balance;

    public int tally(int[] charges) {
        int acc = 0;
        for (int c : charges) {
            if (c > 0) {
                acc += c;
            }
        }
        balance = acc;
        return acc;
    }

    public int recount(int[] items) {
        int sum = 0;
        for (int v : items) {
            if (v > 0) {
                sum += v;
            }
        }
        return sum * 2;
    }

    public int current() {
        return balance;
    }
}
