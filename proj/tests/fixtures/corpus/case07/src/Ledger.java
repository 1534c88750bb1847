import java.util.List;

public class Ledger {
    private List<Integer> entries;
    private int limit = 100;

    int count() {
        return entries.size();
    }

    int balance(int start) {
        int sum = start;
        for (int e : entries) {
            if (e > limit) {
                continue;
            }
            sum += e;
        }
        return sum;
    }

    int balanceTwice(int start) {
        int sum = start;
        for (int e : entries) {
            if (e > limit) {
                continue;
            }
            sum += e;
        }
        sum = sum * 2;
        return sum;
    }
}
