public class Report {
    private StringBuilder body = new StringBuilder();
    private int lines;

    void newline() {
        body.append('\n');
        lines++;
    }

    void header(String title) {
        body.append("== ").append(title).append(" ==");
        newline();
    }

    void section(String title, String text, int width) {
        body.append("-- ").append(title).append(" --");
        body.append(" (").append(width).append(")");
        newline();
        for (String part : text.split(" ")) {
            body.append(part).append(' ');
        }
        newline();
        lines += 2;
    }
}
