public class Codec64Test {
    @Test
    public void testEncodeInteger() {
        Codec64.encodeInteger(big);
    }
}
