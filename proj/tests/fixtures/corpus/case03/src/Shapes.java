public class Shapes {
    private double scale = 1.5;

    double unit() {
        return scale;
    }

    double square(double side) {
        double area = side * side;
        area = area * scale;
        System.out.println("area " + area);
        return area;
    }

    double rectangle(double w, double h) {
        double side = w;
        double area = side * side;
        area = area * scale;
        System.out.println("area " + area);
        return area * h / w;
    }

    double cube(double side) {
        double area = side * side;
        area = area * scale;
        System.out.println("area " + area);
        return area * side;
    }

    void reset() {
        scale = 1.0;
    }
}
