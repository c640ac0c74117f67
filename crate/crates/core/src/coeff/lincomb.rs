//! Text form of rational linear combinations of named basis elements,
//! shared by the group algebra and free algebra literals.
//!
//! Grammar: `term (('+' | '-') term)*` with `term := rational ['*' name] | name`.
//! A bare rational multiplies the ring's unit basis element.

use num_traits::{One, Signed, Zero};

use crate::{Error, Result, Q};

fn coefficient_text(c: &Q) -> String {
    c.to_string()
}

/// Renders `(name, coeff)` pairs in the given order. `unit_name` is the
/// basis element written as a bare coefficient.
pub fn format<'a>(terms: impl IntoIterator<Item = (String, &'a Q)>, unit_name: &str) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if name == unit_name {
            out.push_str(&coefficient_text(&mag));
        } else if mag.is_one() {
            out.push_str(&name);
        } else {
            out.push_str(&coefficient_text(&mag));
            out.push('*');
            out.push_str(&name);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Parses into `(coeff, name)` pairs; `None` marks a bare rational.
pub fn parse(s: &str) -> Result<Vec<(Q, Option<String>)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let err = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    loop {
        skip_ws(&mut i);
        let mut sign = Q::one();
        let mut saw_sign = false;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            saw_sign = true;
            i += 1;
            skip_ws(&mut i);
        }
        if i >= chars.len() {
            if saw_sign || out.is_empty() {
                return Err(err("expected a term"));
            }
            break;
        }
        if !out.is_empty() && !saw_sign {
            return Err(err("expected '+' or '-'"));
        }
        let mut coeff = sign;
        let mut name = None;
        if chars[i].is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            coeff *= super::parse_rational(&text)?;
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
                name = Some(read_name(&chars, &mut i).ok_or_else(|| err("expected a name after '*'"))?);
            }
        } else {
            name = Some(read_name(&chars, &mut i).ok_or_else(|| err("expected a term"))?);
        }
        out.push((coeff, name));
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
    }
    Ok(out)
}

fn read_name(chars: &[char], i: &mut usize) -> Option<String> {
    if *i >= chars.len() || !chars[*i].is_alphabetic() {
        return None;
    }
    let start = *i;
    while *i < chars.len() && (chars[*i].is_alphanumeric() || chars[*i] == '_') {
        *i += 1;
    }
    Some(chars[start..*i].iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_agree() {
        let half = Q::new(1.into(), 2.into());
        let m1 = -Q::one();
        let text = format(vec![("1".to_string(), &half), ("yz".to_string(), &m1)], "1");
        assert_eq!(text, "1/2 - yz");
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed, vec![(half, None), (m1, Some("yz".into()))]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("y z").is_err());
        assert!(parse("2*").is_err());
        assert!(parse("y +").is_err());
    }
}
