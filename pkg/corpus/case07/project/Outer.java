public class Outer {
    private int version;

    public int bump() {
        version++;
        return version;
    }

    static class Codec {
        private int written;

        int encode(int[] raw) {
            int checksum = 0;
            for (int i = 0; i < raw.length; i++) {
                checksum = (checksum * 31 + raw[i]) % 997;
            }
            written++;
            return checksum;
        }

        int probe(int[] raw) {
            int checksum = 0;
            for (int i = 0; i < raw.length; i++) {
                checksum = (checksum * 31 + raw[i]) % 997;
            }
            return checksum + written;
        }
    }
}
