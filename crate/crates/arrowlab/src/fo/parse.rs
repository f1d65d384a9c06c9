//! Recursive-descent parser for the concrete formula syntax.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! formula  := 'forall' var '.' formula | 'exists' var '.' formula | imp
//! imp      := disj ('->' formula)?            (sugar: a -> b  ==  !a | b)
//! disj     := conj ('|' conj)*
//! conj     := unary ('&' unary)*
//! unary    := '!' unary | atom
//! atom     := 'E' '(' var ',' var ')' | var '=' var | '(' formula ')'
//! var      := [a-z][a-z0-9_]*
//! ```
//!
//! `.` binds weakest: a quantifier body extends as far right as possible.
//! Whitespace is insignificant. Implication is desugared during parsing,
//! so the rank computation only ever sees the core connectives.

use std::fmt;

use thiserror::Error;

use super::Formula;

/// Syntax error with 1-based position information.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Relation, // 'E'
    Forall,
    Exists,
    Dot,
    Not,
    And,
    Or,
    Arrow,
    Equals,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::Ident(name) => return write!(f, "identifier `{name}`"),
            Token::Relation => "`E`",
            Token::Forall => "`forall`",
            Token::Exists => "`exists`",
            Token::Dot => "`.`",
            Token::Not => "`!`",
            Token::And => "`&`",
            Token::Or => "`|`",
            Token::Arrow => "`->`",
            Token::Equals => "`=`",
            Token::LParen => "`(`",
            Token::RParen => "`)`",
            Token::Comma => "`,`",
        };
        write!(f, "{s}")
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(Token, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(&c) = self.chars.peek() else { break };
            let token = match c {
                '(' => {
                    self.bump();
                    Token::LParen
                }
                ')' => {
                    self.bump();
                    Token::RParen
                }
                ',' => {
                    self.bump();
                    Token::Comma
                }
                '.' => {
                    self.bump();
                    Token::Dot
                }
                '!' => {
                    self.bump();
                    Token::Not
                }
                '&' => {
                    self.bump();
                    Token::And
                }
                '|' => {
                    self.bump();
                    Token::Or
                }
                '=' => {
                    self.bump();
                    Token::Equals
                }
                '-' => {
                    self.bump();
                    if self.chars.peek() == Some(&'>') {
                        self.bump();
                        Token::Arrow
                    } else {
                        return Err(self.error("expected `>` after `-`"));
                    }
                }
                'E' => {
                    self.bump();
                    Token::Relation
                }
                c if c.is_ascii_lowercase() => {
                    let mut name = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || *c == '_')
                    {
                        name.push(self.bump().unwrap());
                    }
                    match name.as_str() {
                        "forall" => Token::Forall,
                        "exists" => Token::Exists,
                        _ => Token::Ident(name),
                    }
                }
                other => return Err(self.error(format!("unexpected character `{other}`"))),
            };
            out.push((token, line, column));
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        self.pos += 1;
        t
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.bump();
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {want}, found {t}"))),
            None => Err(self.error(format!("expected {want}, found end of input"))),
        }
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            Some(Token::Ident(name)) => Ok(name),
            Some(t) => {
                self.pos -= 1;
                Err(self.error(format!("expected a variable, found {t}")))
            }
            None => Err(self.error("expected a variable, found end of input")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Forall) | Some(Token::Exists) => {
                let universal = self.bump() == Some(Token::Forall);
                let var = self.variable()?;
                self.expect(Token::Dot)?;
                let body = self.formula()?;
                Ok(if universal {
                    Formula::Forall(var, Box::new(body))
                } else {
                    Formula::Exists(var, Box::new(body))
                })
            }
            _ => self.implication(),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::or(Formula::negation(lhs), rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.peek() == Some(&Token::Not) {
            self.bump();
            Ok(Formula::negation(self.unary()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Relation) => {
                self.bump();
                self.expect(Token::LParen)?;
                let a = self.variable()?;
                self.expect(Token::Comma)?;
                let b = self.variable()?;
                self.expect(Token::RParen)?;
                Ok(Formula::Edge(a, b))
            }
            Some(Token::LParen) => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::Ident(_)) => {
                let a = self.variable()?;
                self.expect(Token::Equals)?;
                let b = self.variable()?;
                Ok(Formula::Equal(a, b))
            }
            Some(t) => Err(self.error(format!("expected an atom, found {t}"))),
            None => Err(self.error("expected an atom, found end of input")),
        }
    }
}

/// Parses one formula. Total on the grammar above; everything else gets a
/// positioned error.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.formula()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input after formula"));
    }
    Ok(formula)
}

/// Parses a sentences file: one formula per line, `#` starts a comment,
/// blank lines ignored. Returns each formula with its source text.
pub fn parse_sentences_file(text: &str) -> Result<Vec<(String, Formula)>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let formula = parse_formula(trimmed).map_err(|e| ParseError {
            line: lineno + 1,
            column: e.column,
            message: e.message,
        })?;
        out.push((trimmed.to_string(), formula));
    }
    Ok(out)
}
