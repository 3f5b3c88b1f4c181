public class Inventory {
    private int stock;

    public void restock(int amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount must be positive");
        }
        int next = stock + amount;
        stock = next;
    }

    public int stockLevel() {
        return stock;
    }
}
