/** Array helpers. */
public class ArrayTools {
    /**
     * Tests whether the array contains the given value.
     *
     * @param array an array of values, must not be null
     * @param target the value to look for
     * @return {@code true} when any element {@code array[i]} equals {@code target}
     */
    public static boolean contains(int[] array, int target) {
        for (int i = 0; i < array.length; i++) {
            if (array[i] == target) {
                return true;
            }
        }
        return false;
    }

    /**
     * Finds the first index of the given value.
     *
     * @param array the array to search
     * @param target the value to find
     * @return the index of the value, or -1 when absent
     * @throws NullPointerException if array is null
     */
    public static int indexOf(int[] array, int target) {
        for (int i = 0; i < array.length; i++) {
            if (array[i] == target) {
                return i;
            }
        }
        return -1;
    }
}
