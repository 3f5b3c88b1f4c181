if (amount <= 0) {
    throw new IllegalArgumentException("amount must be positive");
}
int next = stock + amount;
stock = next;
