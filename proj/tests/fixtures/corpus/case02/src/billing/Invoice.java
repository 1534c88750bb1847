package billing;

public class Invoice {
    private double amount;

    public double getAmount() {
        return amount;
    }

    public String render(String customer, double rate) {
        StringBuilder out = new StringBuilder();
        out.append("Customer: ").append(customer);
        double tax = amount * rate;
        double total = amount + tax;
        out.append(" total=").append(total);
        return out.toString();
    }
}
