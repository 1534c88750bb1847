public class Config {
    private int port = 8080;
    private String host;
    protected static final long TIMEOUT = 30L;
    java.util.List<String> tags;
}
