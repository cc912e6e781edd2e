//! Recursive-descent parser for word expressions.
//!
//! Grammar:
//!   expr   := factor { ['*'] factor }
//!   factor := atom ['^' signed-int]
//!   atom   := gen | '1' | '(' expr ')' | '[' expr ',' expr ']'
//!   gen    := 'x' digits | one of the aliases x y z u v (generators 1..5)
//!
//! Whitespace separates freely. `^0` erases its base. Inverses and powers
//! are expanded eagerly, so the result is always freely reduced.

use super::{Word, WordError};

/// Parses `text` into a reduced word. With `rank = Some(r)` any generator
/// above x_r is rejected; with `None` the rank is inferred from the
/// largest generator seen (before reduction), at least 1 for nonempty
/// input that mentions a generator.
pub fn parse(text: &str, rank: Option<u32>) -> Result<Word, WordError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, max_gen: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty input"));
    }
    let word = p.expr(0)?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(&format!("unexpected character '{}'", c as char)));
    }
    let inferred = p.max_gen;
    match rank {
        Some(r) if inferred > r => Err(WordError::GeneratorOutOfRank { gen: inferred, rank: r }),
        Some(r) => word.with_rank(r),
        None => word.with_rank(inferred.max(word.min_rank())),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    max_gen: u32,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> WordError {
        WordError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self, depth: usize) -> Result<Word, WordError> {
        if depth > 256 {
            return Err(self.err("nesting too deep"));
        }
        let mut word = self.factor(depth)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let next = self.factor(depth)?;
                    word = word.concat(&next);
                }
                // juxtaposition: another factor starts right here
                Some(c) if starts_atom(c) => {
                    let next = self.factor(depth)?;
                    word = word.concat(&next);
                }
                _ => return Ok(word),
            }
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Word, WordError> {
        let base = self.atom(depth)?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.signed_int()?;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, depth: usize) -> Result<Word, WordError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("expected a generator, '1', '(' or '['")),
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity(0))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                self.skip_ws();
                if self.bump() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let lhs = self.expr(depth + 1)?;
                self.skip_ws();
                if self.bump() != Some(b',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                let rhs = self.expr(depth + 1)?;
                self.skip_ws();
                if self.bump() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                Ok(super::commutator(&lhs, &rhs))
            }
            Some(c) if is_gen_start(c) => self.generator(),
            Some(c) => Err(self.err(&format!("unexpected character '{}'", c as char))),
        }
    }

    fn generator(&mut self) -> Result<Word, WordError> {
        let c = self.bump().expect("caller checked");
        let gen = match c {
            b'x' => {
                // 'x' alone is generator 1; 'x' + digits is an explicit index
                if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    let n = self.unsigned_int()?;
                    if n == 0 {
                        return Err(self.err("generator indices start at x1"));
                    }
                    n
                } else {
                    1
                }
            }
            b'y' => 2,
            b'z' => 3,
            b'u' => 4,
            b'v' => 5,
            _ => unreachable!(),
        };
        self.max_gen = self.max_gen.max(gen);
        Ok(Word::generator(gen))
    }

    fn unsigned_int(&mut self) -> Result<u32, WordError> {
        let start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse::<u32>()
            .map_err(|_| WordError::Syntax { pos: start, msg: "integer too large".into() })
    }

    fn signed_int(&mut self) -> Result<i64, WordError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer exponent"));
        }
        let n: i64 = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| WordError::Syntax { pos: start, msg: "exponent too large".into() })?;
        Ok(if neg { -n } else { n })
    }
}

fn is_gen_start(c: u8) -> bool {
    matches!(c, b'x' | b'y' | b'z' | b'u' | b'v')
}

fn starts_atom(c: u8) -> bool {
    is_gen_start(c) || matches!(c, b'1' | b'(' | b'[')
}
