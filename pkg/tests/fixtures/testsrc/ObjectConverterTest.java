public class ObjectConverterTest {
    @Test
    public void testConvertReturnsText() {
        ObjectConverter converter = new ObjectConverter();
        String text = converter.convert(input);
        assertNotNull(text);
    }
}
