package geo;

public class Point {
    private double x;
    private double y;

    public double distance(Point other) {
        double dx = x - other.x;
        double dy = y - other.y;
        return Math.sqrt(dx * dx + dy * dy);
    }

    public Point scale(double factor) {
        if (factor == 1.0) {
            return this;
        }
        return new Point();
    }
}
