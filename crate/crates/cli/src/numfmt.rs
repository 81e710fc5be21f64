//! `printf("%.Ng")`-style formatting, and a JSON formatter that writes every
//! float as `%.17g` so reports survive a parse/print round trip byte for byte.

use std::io;

use serde_json::ser::{Formatter, PrettyFormatter};

/// `v` with `digits` significant digits, as C's `%.{digits}g` would print it.
pub fn format_g(v: f64, digits: usize) -> String {
    assert!(digits >= 1, "at least one significant digit");
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Pretty JSON with floats as `%.17g`.
pub struct CanonicalFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl CanonicalFormatter<'_> {
    pub fn new() -> Self {
        Self {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

impl Default for CanonicalFormatter<'_> {
    fn default() -> Self {
        Self::new()
    }
}

impl Formatter for CanonicalFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_g(value, 17).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes `value` as canonical pretty JSON with a trailing newline.
pub fn to_canonical_json<T: serde::Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter::new());
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0, 17, "1"),
            (0.1, 17, "0.10000000000000001"),
            (1e-5, 17, "1.0000000000000001e-05"),
            (123456.0, 3, "1.23e+05"),
            (0.0001, 6, "0.0001"),
            (1e21, 17, "1e+21"),
            (-2.5, 17, "-2.5"),
            (std::f64::consts::PI, 15, "3.14159265358979"),
            (1.6449340668482264, 15, "1.64493406684823"),
            (0.0, 17, "0"),
            (-0.0, 17, "-0"),
            (1e-300, 17, "1e-300"),
            (1e-10, 17, "1e-10"),
            (2.5e-7, 17, "2.4999999999999999e-07"),
        ];
        for (v, d, want) in cases {
            assert_eq!(format_g(v, d), want, "{v} with {d} digits");
        }
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-310, f64::MAX, -7.25e-8, 123456789.0] {
            let s = format_g(v, 17);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn canonical_json() {
        let v = serde_json::json!({"b": [1.5, 0.1], "a": 2});
        let s = to_canonical_json(&v).unwrap();
        assert!(s.contains("0.10000000000000001"));
        assert!(s.ends_with("}\n"));
    }
}
