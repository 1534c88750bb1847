import java.io.IOException;
import java.nio.file.Files;
import java.nio.file.Path;

public class Loader {
    private String fallback = "";

    String fallback() {
        return fallback;
    }

    String loadConfig(Path path) {
        String text;
        try {
            text = Files.readString(path);
        } catch (IOException e) {
            System.err.println("cannot read " + path);
            text = fallback;
        }
        return text.trim();
    }

    int countLines(Path path) {
        String text;
        try {
            text = Files.readString(path);
        } catch (IOException e) {
            System.err.println("cannot read " + path);
            text = fallback;
        }
        return text.split("\n").length;
    }
}
