use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// Pretty printer that writes every float with 17 significant digits, so
/// the text round-trips to the same bits.
struct CanonicalFormatter {
    pretty: PrettyFormatter<'static>,
}

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(writer)
    }
}

/// Canonical text of `value`: object keys sorted, two-space indent, floats
/// in `{:.16e}` form, trailing newline.
pub fn to_canonical_string<T: Serialize + ?Sized>(value: &T) -> String {
    // Going through `Value` sorts object keys.
    let tree = serde_json::to_value(value).expect("serializable value");
    let mut out = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter { pretty: PrettyFormatter::new() });
    tree.serialize(&mut ser).expect("writing to memory");
    let mut text = String::from_utf8(out).expect("JSON output is UTF-8");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn floats_and_key_order() {
        let mut m = HashMap::new();
        m.insert("b", vec![0.1, -0.0, 1.0]);
        m.insert("a", vec![1e-300]);
        let text = to_canonical_string(&m);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.contains("1.0000000000000001e-1"));
        assert!(text.contains("-0.0000000000000000e0"));
        let back: HashMap<String, Vec<f64>> = serde_json::from_str(&text).unwrap();
        assert_eq!(back["b"][0].to_bits(), 0.1f64.to_bits());
        assert_eq!(back["b"][1].to_bits(), (-0.0f64).to_bits());
        assert_eq!(back["a"][0], 1e-300);
    }

    #[test]
    fn integers_stay_integers() {
        assert_eq!(to_canonical_string(&serde_json::json!({"dim": 3})), "{\n  \"dim\": 3\n}\n");
    }
}
