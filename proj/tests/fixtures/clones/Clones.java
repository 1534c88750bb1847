public class Clones {
    private int limit = 10;

    int first(int[] data) {
        int hits = 0;
        for (int v : data) {
            if (v > limit) {
                hits++;
            }
        }
        return hits;
    }

    int second(int[] data) {
        return data.length;
    }

    int third(int[] data, int bonus) {
        int base = bonus * 2;
        int hits = 0;
        for (int v : data) {
            if (v > limit) {
                hits++;
            }
        }
        return hits + base;
    }

    void fourth(String label) {
        System.out.println(label);
    }

    int fifth(int[] data) {
        int count = 0;
        for (int v : data) {
            if (v > limit) {
                count++;
            }
        }
        return count;
    }
}
