package billing;

public class Receipt {
    private double amount;
    private boolean paid;

    public boolean isPaid() {
        return paid;
    }

    public void markPaid() {
        paid = true;
    }

    public String print(String customer, double rate) {
        StringBuilder out = new StringBuilder();
        out.append("Receipt for ").append(customer);
        double tax = amount * rate;
        double total = amount + tax;
        out.append(" total=").append(total);
        if (paid) {
            out.append(" (paid)");
        }
        return out.toString();
    }
}
