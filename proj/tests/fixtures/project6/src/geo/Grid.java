package geo;

public class Grid {
    private int width;
    private int height;

    public int cells() {
        int count = 0;
        for (int row = 0; row < height; row++) {
            for (int col = 0; col < width; col++) {
                count++;
            }
        }
        return count;
    }
}
