public class Stats {
    public double meanOf(double[] xs) {
        double total = 0.0;
        for (int i = 0; i < xs.length; i++) {
            total += xs[i];
        }
        double mean = total / xs.length;
        return mean;
    }

    public double deviation(double[] xs) {
        double total = 0.0;
        for (int i = 0; i < xs.length; i++) {
            total += xs[i];
        }
        double mean = total / xs.length;
        double sq = 0.0;
        for (int i = 0; i < xs.length; i++) {
            sq += (xs[i] - mean) * (xs[i] - mean);
        }
        return sq / xs.length;
    }

    public String describe(double[] xs) {
        double total = 0.0;
        for (int i = 0; i < xs.length; i++) {
            total += xs[i];
        }
        double mean = total / xs.length;
        return "mean=" + mean;
    }

    public int countOf(double[] xs) {
        return xs.length;
    }
}
