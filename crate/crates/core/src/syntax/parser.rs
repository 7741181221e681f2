use std::collections::BTreeSet;

use thiserror::Error;

use super::{BasicInstruction, FamilyTerm, Focus, Instruction, RegisterContent, Term, UnaryFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unexpected character {found:?}, expected {expected}")]
    Unexpected { found: char, expected: &'static str },
    #[error("jump literal does not fit in 64 bits")]
    JumpOverflow,
    #[error("focus index must be a positive 32-bit number")]
    BadIndex,
    #[error("unknown Boolean function {0:?}, expected one of 0, 1, i, c")]
    BadFunction(char),
    #[error("unknown register content {0:?}, expected one of 0, 1, -")]
    BadContent(char),
    #[error("trailing input")]
    Trailing,
}

/// Parses an instruction sequence term.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(text);
    let term = cur.seq()?;
    cur.finish()?;
    Ok(term)
}

/// Parses a register family term.
pub fn parse_family(text: &str) -> Result<FamilyTerm, ParseError> {
    let mut cur = Cursor::new(text);
    let term = cur.family()?;
    cur.finish()?;
    Ok(term)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(found) => self.error(ParseErrorKind::Unexpected { found, expected }),
            None => self.error(ParseErrorKind::UnexpectedEnd(expected)),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek().is_some() {
            Err(self.error(ParseErrorKind::Trailing))
        } else {
            Ok(())
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                self.bump();
            }
            _ => return Err(self.unexpected("an identifier")),
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        Ok(&self.text[start..self.pos])
    }

    fn digits(&mut self) -> Result<(usize, &'a str), ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.unexpected("a natural number"));
        }
        Ok((start, &self.text[start..self.pos]))
    }

    fn focus(&mut self) -> Result<Focus, ParseError> {
        let name = self.ident()?;
        if self.peek() != Some(':') {
            return Ok(Focus::named(name));
        }
        self.bump();
        let (start, digits) = self.digits()?;
        match digits.parse::<u32>() {
            Ok(i) if i >= 1 => Ok(Focus::indexed(name, i)),
            _ => Err(ParseError {
                position: start,
                kind: ParseErrorKind::BadIndex,
            }),
        }
    }

    fn function(&mut self) -> Result<UnaryFn, ParseError> {
        match self.peek() {
            Some(c) => match UnaryFn::from_symbol(c) {
                Some(f) => {
                    self.bump();
                    Ok(f)
                }
                None => Err(self.error(ParseErrorKind::BadFunction(c))),
            },
            None => Err(self.unexpected("a Boolean function")),
        }
    }

    fn basic(&mut self) -> Result<BasicInstruction, ParseError> {
        let start = self.pos;
        let focus = self.focus()?;
        if self.peek() != Some('.') {
            if focus.index().is_some() {
                return Err(self.unexpected("'.' after a focus"));
            }
            return Ok(BasicInstruction::Abstract(
                self.text[start..self.pos].to_owned(),
            ));
        }
        self.bump();
        let reply = self.function()?;
        if self.peek() != Some('/') {
            return Err(self.unexpected("'/'"));
        }
        self.bump();
        let effect = self.function()?;
        Ok(BasicInstruction::register(focus, reply, effect))
    }

    fn primitive(&mut self) -> Result<Instruction, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('!') => {
                self.bump();
                Ok(Instruction::Halt)
            }
            Some('#') => {
                self.bump();
                let (start, digits) = self.digits()?;
                digits
                    .parse::<u64>()
                    .map(Instruction::Jump)
                    .map_err(|_| ParseError {
                        position: start,
                        kind: ParseErrorKind::JumpOverflow,
                    })
            }
            Some('+') => {
                self.bump();
                Ok(Instruction::PosTest(self.basic()?))
            }
            Some('-') => {
                self.bump();
                Ok(Instruction::NegTest(self.basic()?))
            }
            _ => Ok(Instruction::Plain(self.basic()?)),
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        if self.eat('(') {
            let inner = self.seq()?;
            self.expect(')', "')'")?;
            Ok(inner)
        } else {
            self.primitive().map(Term::Instr)
        }
    }

    fn item(&mut self) -> Result<Term, ParseError> {
        let atom = self.atom()?;
        if self.eat('*') {
            Ok(Term::repeat(atom))
        } else {
            Ok(atom)
        }
    }

    fn seq(&mut self) -> Result<Term, ParseError> {
        let mut items = vec![self.item()?];
        while self.eat(';') {
            items.push(self.item()?);
        }
        Ok(Term::sequence(items).expect("at least one item"))
    }

    fn family(&mut self) -> Result<FamilyTerm, ParseError> {
        let head = self.family_operand()?;
        if self.eat('+') {
            let rest = self.family()?;
            Ok(FamilyTerm::compose(head, rest))
        } else {
            Ok(head)
        }
    }

    fn family_operand(&mut self) -> Result<FamilyTerm, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('{') => {
                self.bump();
                let mut bindings = Vec::new();
                if !self.eat('}') {
                    loop {
                        bindings.push(self.binding()?);
                        if self.eat('}') {
                            break;
                        }
                        self.expect(',', "',' or '}'")?;
                    }
                }
                Ok(FamilyTerm::from_bindings(bindings))
            }
            Some('(') => {
                self.bump();
                let inner = self.family()?;
                self.expect(')', "')'")?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let word = self.ident()?;
                if word != "hide" {
                    self.pos = start;
                    return Err(self.unexpected("'{', '(' or 'hide'"));
                }
                self.expect('{', "'{'")?;
                let mut hidden = BTreeSet::new();
                if !self.eat('}') {
                    loop {
                        self.skip_ws();
                        hidden.insert(self.focus()?);
                        if self.eat('}') {
                            break;
                        }
                        self.expect(',', "',' or '}'")?;
                    }
                }
                self.expect('(', "'('")?;
                let body = self.family()?;
                self.expect(')', "')'")?;
                Ok(FamilyTerm::encapsulate(hidden, body))
            }
            _ => Err(self.unexpected("a register family")),
        }
    }

    fn binding(&mut self) -> Result<(Focus, RegisterContent), ParseError> {
        self.skip_ws();
        let focus = self.focus()?;
        self.expect('=', "'='")?;
        self.skip_ws();
        let content = match self.peek() {
            Some(c) => match RegisterContent::from_symbol(c) {
                Some(content) => {
                    self.bump();
                    content
                }
                None => return Err(self.error(ParseErrorKind::BadContent(c))),
            },
            None => return Err(self.unexpected("register content")),
        };
        Ok((focus, content))
    }
}
