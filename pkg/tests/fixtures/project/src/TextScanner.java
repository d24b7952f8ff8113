/** Scans a fixed text. */
public class TextScanner {
    public String text;

    /**
     * Tests whether the scanned text starts with the given prefix.
     *
     * @param prefix the prefix to test, must not be null and not empty
     * @return true when the text starts with the prefix
     */
    public boolean startsWith(String prefix) {
        return this.text.startsWith(prefix);
    }

    /**
     * Compares this scanner with another object.
     *
     * @param other the object to compare with
     * @return a negative, zero, or positive number
     * @throws ClassCastException if other is not a TextScanner
     */
    public int compareTo(Object other) {
        return 0;
    }
}
