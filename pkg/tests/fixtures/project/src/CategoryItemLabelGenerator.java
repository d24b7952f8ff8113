/** Generates labels for category chart items. */
public interface CategoryItemLabelGenerator {
    /**
     * Generates a label for one item.
     *
     * @param row the row index
     * @return the label text
     */
    String generateLabel(int row);
}
