public class Ledger {
    private int stock;
    private int entries;

    public void record(int amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount must be positive");
        }
        int next = stock + amount;
        stock = next;
        entries++;
    }

    public int count() {
        return entries;
    }
}
