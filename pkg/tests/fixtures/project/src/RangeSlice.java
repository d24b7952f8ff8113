/** Range clamping helpers. */
public class RangeSlice {
    /**
     * Clamps a value into the inclusive range [low, high].
     *
     * @param value the value to clamp
     * @param low the lower bound, must not be greater than high
     * @param high the upper bound
     * @return a value between low and high inclusive
     * @throws IllegalArgumentException if low is greater than high
     */
    public static int clamp(int value, int low, int high) {
        if (value < low) {
            return low;
        }
        if (value > high) {
            return high;
        }
        return value;
    }
}
