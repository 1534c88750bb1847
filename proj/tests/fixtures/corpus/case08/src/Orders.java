import java.util.Map;

public class Orders {
    private Map<String, Integer> stock;

    int available(String sku) {
        return stock.getOrDefault(sku, 0);
    }

    boolean reserve(String sku, int qty) {
        int have = stock.getOrDefault(sku, 0);
        if (have >= qty) {
            stock.put(sku, have - qty);
            return true;
        }
        return false;
    }

    boolean release(String item, int amount, boolean log) {
        if (log) {
            System.out.println("release " + item);
        }
        int current = stock.getOrDefault(item, 0);
        int cap = 1000;
        if (current + amount > cap) {
            amount = cap - current;
        }
        stock.put(item, current + amount);
        System.out.println("released " + amount + " of " + item);
        return amount > 0;
    }
}
