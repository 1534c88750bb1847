public class Greeter {
    private String prefix = "Hello";

    void greet(String name) {
        String text = prefix + ", " + name;
        System.out.println(text);
        System.out.println("-".repeat(text.length()));
    }

    void greetAll(String[] names) {
        for (String name : names) {
            String text = prefix + ", " + name;
            System.out.println(text);
            System.out.println("-".repeat(text.length()));
        }
    }
}
