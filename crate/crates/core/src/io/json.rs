//! Minimal JSON reader that remembers where every value starts.
//!
//! Only used for input documents; output goes through `serde_json`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    /// Raw number text, validated against the JSON grammar.
    Number(String),
    String(String),
    Array(Vec<Spanned>),
    Object(Vec<(Spanned, Spanned)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub pos: Pos,
    pub value: Json,
}

impl Spanned {
    pub fn kind(&self) -> &'static str {
        match self.value {
            Json::Null => "null",
            Json::Bool(_) => "boolean",
            Json::Number(_) => "number",
            Json::String(_) => "string",
            Json::Array(_) => "array",
            Json::Object(_) => "object",
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match &self.value {
            Json::String(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match &self.value {
            Json::Number(s) => s.parse().ok(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

pub fn parse(text: &str) -> Result<Spanned, SyntaxError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        i: 0,
        line: 1,
        column: 1,
    };
    p.skip_ws();
    let v = p.value()?;
    p.skip_ws();
    if p.i < p.chars.len() {
        return Err(p.err("trailing characters after document"));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    i: usize,
    line: usize,
    column: usize,
}

impl Parser {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn err(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\n' | '\r')) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    fn value(&mut self) -> Result<Spanned, SyntaxError> {
        let pos = self.pos();
        let value = match self.peek() {
            Some('{') => self.object()?,
            Some('[') => self.array()?,
            Some('"') => Json::String(self.string()?),
            Some('t') => self.keyword("true", Json::Bool(true))?,
            Some('f') => self.keyword("false", Json::Bool(false))?,
            Some('n') => self.keyword("null", Json::Null)?,
            Some(c) if c == '-' || c.is_ascii_digit() => self.number()?,
            Some(c) => return Err(self.err(format!("unexpected character `{c}`"))),
            None => return Err(self.err("unexpected end of input")),
        };
        Ok(Spanned { pos, value })
    }

    fn keyword(&mut self, word: &str, value: Json) -> Result<Json, SyntaxError> {
        for expected in word.chars() {
            if self.peek() != Some(expected) {
                return Err(self.err(format!("invalid literal, expected `{word}`")));
            }
            self.bump();
        }
        Ok(value)
    }

    fn number(&mut self) -> Result<Json, SyntaxError> {
        let mut raw = String::new();
        if self.peek() == Some('-') {
            raw.push('-');
            self.bump();
        }
        match self.peek() {
            Some('0') => {
                raw.push('0');
                self.bump();
            }
            Some(c) if c.is_ascii_digit() => self.digits(&mut raw),
            _ => return Err(self.err("invalid number")),
        }
        if self.peek() == Some('.') {
            raw.push('.');
            self.bump();
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.err("expected digit after decimal point"));
            }
            self.digits(&mut raw);
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            raw.push(e);
            self.bump();
            if let Some(s @ ('+' | '-')) = self.peek() {
                raw.push(s);
                self.bump();
            }
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.err("expected digit in exponent"));
            }
            self.digits(&mut raw);
        }
        Ok(Json::Number(raw))
    }

    fn digits(&mut self, raw: &mut String) {
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            raw.push(c);
            self.bump();
        }
    }

    fn hex4(&mut self) -> Result<u32, SyntaxError> {
        let mut v = 0;
        for _ in 0..4 {
            let d = self
                .peek()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.err("invalid \\u escape"))?;
            self.bump();
            v = v * 16 + d;
        }
        Ok(v)
    }

    fn string(&mut self) -> Result<String, SyntaxError> {
        self.expect('"')?;
        let mut s = String::new();
        loop {
            match self.peek() {
                None => return Err(self.err("unterminated string")),
                Some('"') => {
                    self.bump();
                    return Ok(s);
                }
                Some('\\') => {
                    self.bump();
                    let c = match self.peek() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('/') => '/',
                        Some('b') => '\u{8}',
                        Some('f') => '\u{c}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('t') => '\t',
                        Some('u') => {
                            self.bump();
                            let hi = self.hex4()?;
                            let code = if (0xD800..0xDC00).contains(&hi) {
                                self.expect('\\')?;
                                self.expect('u')?;
                                let lo = self.hex4()?;
                                if !(0xDC00..0xE000).contains(&lo) {
                                    return Err(self.err("invalid surrogate pair"));
                                }
                                0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00)
                            } else {
                                hi
                            };
                            s.push(
                                char::from_u32(code)
                                    .ok_or_else(|| self.err("invalid code point"))?,
                            );
                            continue;
                        }
                        _ => return Err(self.err("invalid escape")),
                    };
                    self.bump();
                    s.push(c);
                }
                Some(c) if (c as u32) < 0x20 => return Err(self.err("control character in string")),
                Some(c) => {
                    self.bump();
                    s.push(c);
                }
            }
        }
    }

    fn array(&mut self) -> Result<Json, SyntaxError> {
        self.expect('[')?;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(Json::Array(items));
        }
        loop {
            self.skip_ws();
            items.push(self.value()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(']') => {
                    self.bump();
                    return Ok(Json::Array(items));
                }
                _ => return Err(self.err("expected `,` or `]`")),
            }
        }
    }

    fn object(&mut self) -> Result<Json, SyntaxError> {
        self.expect('{')?;
        let mut members = Vec::new();
        self.skip_ws();
        if self.peek() == Some('}') {
            self.bump();
            return Ok(Json::Object(members));
        }
        loop {
            self.skip_ws();
            let kpos = self.pos();
            if self.peek() != Some('"') {
                return Err(self.err("expected string key"));
            }
            let key = Spanned {
                pos: kpos,
                value: Json::String(self.string()?),
            };
            self.skip_ws();
            self.expect(':')?;
            self.skip_ws();
            let v = self.value()?;
            members.push((key, v));
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some('}') => {
                    self.bump();
                    return Ok(Json::Object(members));
                }
                _ => return Err(self.err("expected `,` or `}`")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let v = parse("{\n  \"a\": [1, \"x\\u00e9\"]\n}").unwrap();
        let Json::Object(m) = &v.value else { panic!() };
        assert_eq!(m[0].0.pos, Pos { line: 2, column: 3 });
        let Json::Array(items) = &m[0].1.value else {
            panic!()
        };
        assert_eq!(
            items[1].pos,
            Pos {
                line: 2,
                column: 12
            }
        );
        assert_eq!(items[1].as_str(), Some("xé"));
    }

    #[test]
    fn syntax_errors_point_at_offender() {
        let e = parse("{\"a\": 1,,}").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, column: 9 });
        let e = parse("[1, 2").unwrap_err();
        assert_eq!(e.pos.column, 6);
        assert!(parse("01").is_err());
        assert!(parse("{} x").is_err());
        assert_eq!(parse("-12").unwrap().as_i64(), Some(-12));
        assert_eq!(parse("1.5e3").unwrap().as_i64(), None);
    }
}
