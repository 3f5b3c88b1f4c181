public class Worker {
    private int processed;

    public int drain(int[] queue) {
        int moved = 0;
        for (int q : queue) {
            if (q != 0) {
                moved += q;
            }
        }
        processed = moved;
        return moved;
    }

    public int rehearse(int[] queue) {
        int moved = 0;
        for (int q : queue) {
            if (q != 0) {
                moved += q;
            }
        }
        return moved;
    }

    public int processedCount() {
        return processed;
    }
}
