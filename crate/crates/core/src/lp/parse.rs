use super::{Formula3, LpError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    Iff,
    Open,
    Close,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::Not => "'!'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Imp => "'->'".into(),
            Token::Iff => "'<->'".into(),
            Token::Open => "'('".into(),
            Token::Close => "')'".into(),
        }
    }
}

fn error(column: usize, message: impl Into<String>) -> LpError {
    LpError::Parse { column, message: message.into() }
}

/// Tokens with their 1-based column.
fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let starts = |s: &str| s.chars().enumerate().all(|(k, x)| chars.get(i + k) == Some(&x));
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), col));
        } else if starts("<->") {
            out.push((Token::Iff, col));
            i += 3;
        } else if starts("->") {
            out.push((Token::Imp, col));
            i += 2;
        } else {
            let tok = match c {
                '!' => Token::Not,
                '&' => Token::And,
                '|' => Token::Or,
                '(' => Token::Open,
                ')' => Token::Close,
                _ => return Err(error(col, format!("unexpected character {c:?}"))),
            };
            out.push((tok, col));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // iff := imp ('<->' imp)*
    fn iff(&mut self) -> Result<Formula3> {
        let mut left = self.imp()?;
        while self.eat(&Token::Iff) {
            left = Formula3::iff(left, self.imp()?);
        }
        Ok(left)
    }

    // imp := or ('->' imp)?
    fn imp(&mut self) -> Result<Formula3> {
        let left = self.or()?;
        if self.eat(&Token::Imp) {
            return Ok(Formula3::imp(left, self.imp()?));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula3> {
        let mut left = self.and()?;
        while self.eat(&Token::Or) {
            left = Formula3::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula3> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            left = Formula3::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula3> {
        let col = self.column();
        match self.tokens.get(self.pos).map(|(t, _)| t.clone()) {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula3::not(self.unary()?))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Formula3::Atom(name))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Token::Close) {
                    return Err(self.unexpected("')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(error(col, format!("expected a formula, found {}", t.describe()))),
            None => Err(error(col, "expected a formula, found end of input")),
        }
    }

    fn unexpected(&self, wanted: &str) -> LpError {
        match self.peek() {
            Some(t) => error(self.column(), format!("expected {wanted}, found {}", t.describe())),
            None => error(self.column(), format!("expected {wanted}, found end of input")),
        }
    }
}

/// Parses formula text. Precedence from tightest: `!`, `&`, `|`, `->`
/// (right-associative), `<->`.
pub fn parse_formula(text: &str) -> Result<Formula3> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.chars().count() + 1 };
    let f = p.iff()?;
    if p.pos < p.tokens.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}
