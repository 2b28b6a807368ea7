use catcoh_core::abelian::{direct_sum, FPAbelianGroup, Int, IntMatrix};

use super::ParseError;

/// Characters that end a name in the category, structure and natsys blocks.
pub(crate) fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !":=,;[]".contains(c)
}

/// Characters of identifiers in the term grammars.
pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// A position in one line of input.
#[derive(Clone)]
pub(crate) struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, pos: 0, line }
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn col(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col(), message: message.into() }
    }

    pub fn error_at(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col, message: message.into() }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub fn ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    pub fn at(&mut self, s: &str) -> bool {
        self.ws();
        self.rest().starts_with(s)
    }

    /// Consumes `s` if it comes next.
    pub fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// Consumes the keyword `kw` only when it is a whole word.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        if self.eat(kw) && !self.rest().chars().next().is_some_and(is_ident_char) {
            return true;
        }
        self.pos = save;
        false
    }

    pub fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.ws();
        self.pos == self.text.len()
    }

    pub fn end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected `{}`", self.rest())))
        }
    }

    /// A non-empty run of characters satisfying `ok`.
    pub fn word(&mut self, ok: impl Fn(char) -> bool, what: &str) -> Result<(String, usize), ParseError> {
        self.ws();
        let col = self.col();
        let len: usize = self.rest().chars().take_while(|&c| ok(c)).map(char::len_utf8).sum();
        if len == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        let w = self.rest()[..len].to_string();
        self.pos += len;
        Ok((w, col))
    }

    pub fn name(&mut self) -> Result<(String, usize), ParseError> {
        self.word(is_name_char, "a name")
    }

    pub fn ident(&mut self) -> Result<(String, usize), ParseError> {
        self.word(is_ident_char, "an identifier")
    }

    /// Text up to the matching `close`, the opening delimiter already consumed.
    pub fn balanced(&mut self, open: char, close: char) -> Result<String, ParseError> {
        let mut depth = 1;
        for (i, c) in self.rest().char_indices() {
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    let s = self.rest()[..i].to_string();
                    self.pos += i + c.len_utf8();
                    return Ok(s);
                }
            }
        }
        Err(self.error(format!("missing `{close}`")))
    }

    /// A double-quoted string without escapes.
    pub fn quoted(&mut self) -> Result<String, ParseError> {
        self.expect("\"")?;
        match self.rest().find('"') {
            Some(i) => {
                let s = self.rest()[..i].to_string();
                self.pos += i + 1;
                Ok(s)
            }
            None => Err(self.error("unterminated string")),
        }
    }

    pub fn int(&mut self) -> Result<Int, ParseError> {
        self.ws();
        let col = self.col();
        let r = self.rest();
        let sign = usize::from(r.starts_with('-'));
        let digits = r[sign..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let s = &r[..sign + digits];
        self.pos += s.len();
        s.parse().map_err(|_| self.error_at(col, format!("bad integer `{s}`")))
    }

    pub fn usize(&mut self) -> Result<usize, ParseError> {
        let col = self.col();
        let n = self.int()?;
        usize::try_from(n).map_err(|_| self.error_at(col, "expected a non-negative integer"))
    }

    /// `[a b c; d e f]`; commas between entries are optional.
    pub fn rows(&mut self) -> Result<Vec<Vec<Int>>, ParseError> {
        self.expect("[")?;
        let mut rows = vec![Vec::new()];
        loop {
            if self.eat("]") {
                break;
            }
            if self.eat(";") {
                rows.push(Vec::new());
                continue;
            }
            if self.eat(",") {
                continue;
            }
            let x = self.int()?;
            rows.last_mut().expect("nonempty").push(x);
        }
        if rows.len() == 1 && rows[0].is_empty() {
            rows.clear();
        }
        Ok(rows)
    }

    /// A matrix with `rows x cols` entries.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> Result<IntMatrix, ParseError> {
        self.ws();
        let col = self.col();
        let data = self.rows()?;
        if rows == 0 || cols == 0 {
            if data.iter().any(|r| !r.is_empty()) {
                return Err(self.error_at(col, format!("expected an empty {rows}x{cols} matrix")));
            }
            return Ok(IntMatrix::zeros(rows, cols));
        }
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(self.error_at(col, format!("expected a {rows}x{cols} matrix")));
        }
        Ok(IntMatrix::from_rows(&data))
    }

    /// `0`, `Z`, `Z^r`, `Z/n`, `Z^r / [relation rows]`, joined by `+`.
    pub fn group(&mut self) -> Result<FPAbelianGroup, ParseError> {
        let mut parts = Vec::new();
        loop {
            self.ws();
            let col = self.col();
            if self.eat("0") {
                parts.push(FPAbelianGroup::zero());
            } else if self.eat("Z") {
                if self.eat("/") {
                    if self.at("[") {
                        return Err(self.error("write relations as `Z^r / [rows]`"));
                    }
                    let n = self.int()?;
                    parts.push(FPAbelianGroup::cyclic(n));
                } else {
                    let r = if self.eat("^") { self.usize()? } else { 1 };
                    let rels = if self.eat("/") { self.rows()? } else { Vec::new() };
                    if let Some(bad) = rels.iter().find(|row| row.len() != r) {
                        return Err(self.error_at(col, format!("relation of length {} in Z^{r}", bad.len())));
                    }
                    let m = IntMatrix::from_columns(r, &rels);
                    parts.push(FPAbelianGroup::new(r, m).map_err(|e| self.error_at(col, e.to_string()))?);
                }
            } else {
                return Err(self.error("expected a group"));
            }
            if !self.eat("+") {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { direct_sum(&parts).group })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        let g = |s: &str| Cursor::new(s, 1).group().unwrap().invariant_factors().to_string();
        assert_eq!(g("Z/2"), "Z/2");
        assert_eq!(g("Z^2 / [2 0; 0 3]"), "Z/6");
        assert_eq!(g("Z + Z/4 + 0"), "Z + Z/4");
        assert_eq!(g("Z^0"), "0");
        assert_eq!(g("Z^3 / []"), "Z^3");
    }

    #[test]
    fn matrices_check_their_shape() {
        assert!(Cursor::new("[1 0; 0 1]", 1).matrix(2, 2).is_ok());
        let e = Cursor::new("  [1 0]", 4).matrix(2, 2).unwrap_err();
        assert_eq!((e.line, e.col), (4, 3));
        assert_eq!(Cursor::new("[]", 1).matrix(0, 3).unwrap(), IntMatrix::zeros(0, 3));
    }

    #[test]
    fn names_stop_at_punctuation() {
        let mut c = Cursor::new("p1=e1.e0, x", 1);
        assert_eq!(c.name().unwrap().0, "p1");
        c.expect("=").unwrap();
        assert_eq!(c.name().unwrap(), ("e1.e0".to_string(), 4));
    }
}
