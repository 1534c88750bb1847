public class Accumulator {
    private int sum;

    void helper() {
        sum = 0;
    }

    void addPositive(int x) {
        if (x > 0) {
            sum += x;
        }
    }

    int scaled(int x) {
        int sum = x * 2;
        sum++;
        helper();
        return sum;
    }
}
