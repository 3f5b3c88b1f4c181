public class Margin {
    private int floor;

    public int clampAll(int[] values, int limit) {
        int bounded = 0;
        for (int i = 0; i < values.length; i++) {
            if (values[i] > limit) {
                bounded = bounded + limit;
            } else {
                bounded = bounded + values[i];
            }
        }
        floor = bounded;
        notifyChange(bounded);
        return bounded;
    }

    public int previewClamp(int[] values, int limit) {
        int capped = 0;
        for (int i = 0; i < values.length; i++) {
            if (values[i] > limit) {
                capped = capped + limit;
            } else {
                capped = capped + values[i];
            }
        }
        return capped;
    }

    private void notifyChange(int value) {
    }
}
