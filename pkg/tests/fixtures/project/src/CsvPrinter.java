/** Prints values as CSV. */
public class CsvPrinter {
    /**
     * Prints headers for a result set based on its metadata.
     *
     * @param resultSet the result set to query for metadata, must not be null
     * @throws IOException if an I/O error occurs.
     * @throws SQLException if a database access error occurs or this method is
     * called on a closed result set.
     */
    public synchronized void printHeaders(ResultSet resultSet) {
    }
}
