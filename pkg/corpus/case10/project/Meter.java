public class Meter {
    private int reads;

    public int snapshot(int base, int gain) {
        int high = base * gain + 3;
        int low = base - gain + 7;
        int mid = high - low;
        reads++;
        publish(mid);
        return mid;
    }

    public int resample(int base, int gain) {
        int low = base - gain + 7;
        int high = base * gain + 3;
        int mid = high - low;
        return mid;
    }

    private void publish(int value) {
    }
}
