public class ObjectConverterTest {
    @Test
    public void testConvertReturnsText() {
        ObjectConverter converter = new ObjectConverter();
        // [oracle] EXCEPT_POST object == null;
        if (input == null) {
            try {
                String text = converter.convert(input);
                fail("Expected NullPointerException");
            } catch (NullPointerException e) {
                // expected
            }
        }
        String text = converter.convert(input);
        assertNotNull(text);
    }
}
