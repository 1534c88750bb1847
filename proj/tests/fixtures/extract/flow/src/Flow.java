public class Flow {
    private int base = 3;

    int inOut(int x) {
        int sum = base;
        sum += x;
        sum = sum * 2;
        return sum;
    }

    int twoOutputs(int x) {
        int a = x + 1;
        int b = x + 2;
        return a * b;
    }

    int early(int x) {
        if (x < 0) {
            return -1;
        }
        return x;
    }

    int loops(int[] xs) {
        int n = 0;
        for (int v : xs) {
            if (v < 0) {
                break;
            }
            n += v;
        }
        return n;
    }

    int assignedFirst(int x) {
        int y = 0;
        y = x * 3;
        System.out.println(y);
        return x;
    }

    int closed(int x) {
        int t = x * 2;
        System.out.println(t);
        return x;
    }

    int inferred(int x) {
        var t = x * 2;
        int u = t + 1;
        return u;
    }

    int readInLoop(int[] xs) {
        int last = 0;
        for (int v : xs) {
            System.out.println(last);
            last = v;
        }
        return 0;
    }
}
