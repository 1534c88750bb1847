public class Outer {
    private int count;

    void bump() {
        count++;
    }

    static class Helper {
        private String name;

        String greet(String who) {
            return "hi " + who + name;
        }
    }

    int total() {
        return count * 2;
    }
}
