class Alpha {
    private int count;

    int one() {
        return 1;
    }

    int two(int x) {
        count = x;
        return count;
    }

    int three(int x) {
        if (x > 0) {
            count++;
        }
        return count;
    }
}
