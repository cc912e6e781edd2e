//! Permutations on {0, .., degree-1} stored as image arrays.
//!
//! Text form uses the usual 1-based cycle notation. Composition is
//! left-to-right: (a*b) applies a first, so (a*b)[i] = b[a[i]].

use super::GroupError;

pub fn identity(degree: usize) -> Vec<u16> {
    (0..degree as u16).collect()
}

pub fn mul_into(a: &[u16], b: &[u16], out: &mut [u16]) {
    for (o, &ai) in out.iter_mut().zip(a.iter()) {
        *o = b[ai as usize];
    }
}

pub fn inverse(a: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        inv[ai as usize] = i as u16;
    }
    inv
}

/// Parses cycle notation like "(1 2 3)(4 5)" into an image array.
/// Points are 1-based in text, 0-based internally. Commas may separate
/// points instead of spaces. "()" is the identity.
pub fn parse_cycles(degree: u32, text: &str) -> Result<Vec<u16>, GroupError> {
    let bad = |msg: &str| GroupError::PermSyntax { text: text.to_string(), msg: msg.to_string() };
    let mut img = identity(degree as usize);
    let mut seen = vec![false; degree as usize];
    let mut chars = text.chars().peekable();
    let mut any = false;
    loop {
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        match chars.next() {
            None => break,
            Some('(') => {}
            Some(c) => return Err(bad(&format!("expected '(' but found '{c}'"))),
        }
        any = true;
        let mut cycle: Vec<u16> = Vec::new();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace() || *c == ',') {
                chars.next();
            }
            match chars.peek() {
                Some(')') => {
                    chars.next();
                    break;
                }
                Some(c) if c.is_ascii_digit() => {
                    let mut v = 0u32;
                    while matches!(chars.peek(), Some(d) if d.is_ascii_digit()) {
                        v = v * 10 + chars.next().unwrap().to_digit(10).unwrap();
                        if v > degree {
                            return Err(bad(&format!("point {v} exceeds degree {degree}")));
                        }
                    }
                    if v == 0 {
                        return Err(bad("points are 1-based"));
                    }
                    let z = (v - 1) as usize;
                    if seen[z] {
                        return Err(bad(&format!("point {v} appears twice")));
                    }
                    seen[z] = true;
                    cycle.push(z as u16);
                }
                Some(c) => return Err(bad(&format!("unexpected character '{c}'"))),
                None => return Err(bad("unclosed cycle")),
            }
        }
        for i in 0..cycle.len() {
            img[cycle[i] as usize] = cycle[(i + 1) % cycle.len()];
        }
    }
    if !any {
        return Err(bad("expected at least one cycle, or '()'"));
    }
    Ok(img)
}

/// 1-based cycle notation; "()" for the identity. Fixed points are omitted.
pub fn format_cycles(a: &[u16]) -> String {
    let mut seen = vec![false; a.len()];
    let mut out = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        loop {
            seen[i] = true;
            if i != start {
                out.push(' ');
            }
            out.push_str(&(i + 1).to_string());
            i = a[i] as usize;
            if i == start {
                break;
            }
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
