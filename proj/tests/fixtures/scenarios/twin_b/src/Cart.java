package shop;

public class Cart {
    private double[] prices = new double[0];
    private double discount = 0.1;

    double subtotal() {
        double sum = 0;
        for (double p : prices) {
            sum += p;
        }
        return sum;
    }

    double total(boolean member) {
        double sum = 0;
        for (double p : prices) {
            sum += p;
        }
        if (member) {
            sum = sum * (1 - discount);
        }
        return sum;
    }

    int count() {
        return prices.length;
    }

    void clear() {
        prices = new double[0];
        discount = 0;
    }

    String describe() {
        String label = "cart of " + prices.length;
        System.out.println(label);
        return label;
    }
}
