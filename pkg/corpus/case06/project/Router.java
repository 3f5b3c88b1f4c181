public class Router {
    private int hits;

    public int dispatch(int code, int base) {
        int route = base;
        switch (code) {
            case 1:
                route = base + 10;
                break;
            case 2:
                route = base + 20;
                break;
            default:
                route = 0;
                break;
        }
        hits++;
        return route;
    }

    public int redispatch(int code, int base) {
        int route = base;
        switch (code) {
            case 1:
                route = base + 10;
                break;
            case 2:
                route = base + 20;
                break;
            default:
                route = 0;
                break;
        }
        return route - 1;
    }

    public int hitCount() {
        return hits;
    }
}
