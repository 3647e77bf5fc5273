//! Text syntax shared by modal and first-order formulas.
//!
//! ```text
//! formula  := or ( "->" formula )?           right associative, loosest
//! or       := and ( "|" and )*
//! and      := unary ( "&" unary )*
//! unary    := "!" unary | "box" unary | "dia" unary
//!           | ("forall" | "exists") vK "." formula
//!           | primary
//! primary  := "true" | "false" | "(" formula ")" | NAME | NAME "(" vars ")"
//! ```
//!
//! A quantifier body extends as far to the right as possible.

use super::{FoFormula, LogicError, ModalFormula};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Arrow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    True,
    False,
    Atom(String, Option<Vec<usize>>),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Box_(Box<Expr>),
    Dia(Box<Expr>),
    Forall(usize, Box<Expr>),
    Exists(usize, Box<Expr>),
}

fn err(offset: usize, message: impl Into<String>) -> LogicError {
    LogicError::Parse {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some((_, '>')) => Tok::Arrow,
                    _ => return Err(err(i, "expected `->`")),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, Tok::Name(name)));
                continue;
            }
            other => return Err(err(i, format!("unexpected character `{other}`"))),
        };
        chars.next();
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn variable(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('v')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&k| k > 0)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), LogicError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(err(self.offset(), format!("expected {what}")))
        }
    }

    fn name(&mut self) -> Option<String> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Some(n)
            }
            _ => None,
        }
    }

    fn formula(&mut self) -> Result<Expr, LogicError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            Ok(Expr::Implies(Box::new(lhs), Box::new(self.formula()?)))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Expr, LogicError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = Expr::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, LogicError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = Expr::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, LogicError> {
        if self.eat(&Tok::Not) {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        let start = self.pos;
        match self.name().as_deref() {
            Some("box") => return Ok(Expr::Box_(Box::new(self.unary()?))),
            Some("dia") => return Ok(Expr::Dia(Box::new(self.unary()?))),
            Some(q @ ("forall" | "exists")) => {
                let q = q.to_string();
                let at = self.offset();
                let var = self
                    .name()
                    .as_deref()
                    .and_then(variable)
                    .ok_or_else(|| err(at, "expected a variable `vK` after the quantifier"))?;
                self.expect(&Tok::Dot, "`.` after the bound variable")?;
                let body = Box::new(self.formula()?);
                return Ok(if q == "forall" {
                    Expr::Forall(var, body)
                } else {
                    Expr::Exists(var, body)
                });
            }
            _ => self.pos = start,
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, LogicError> {
        let at = self.offset();
        if self.eat(&Tok::LParen) {
            let inner = self.formula()?;
            self.expect(&Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        let name = self.name().ok_or_else(|| err(at, "expected a formula"))?;
        match name.as_str() {
            "true" => return Ok(Expr::True),
            "false" => return Ok(Expr::False),
            "box" | "dia" | "forall" | "exists" => {
                return Err(err(at, format!("`{name}` is reserved")))
            }
            _ => {}
        }
        if !self.eat(&Tok::LParen) {
            return Ok(Expr::Atom(name, None));
        }
        let mut args = Vec::new();
        if !self.eat(&Tok::RParen) {
            loop {
                let at = self.offset();
                let v = self
                    .name()
                    .as_deref()
                    .and_then(variable)
                    .ok_or_else(|| err(at, "expected a variable `vK`"))?;
                args.push(v);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(&Tok::Comma, "`,` or `)`")?;
            }
        }
        Ok(Expr::Atom(name, Some(args)))
    }
}

fn parse(text: &str) -> Result<Expr, LogicError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let e = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

fn to_modal(e: Expr) -> Result<ModalFormula, LogicError> {
    use ModalFormula as M;
    let b = |e: Box<Expr>| to_modal(*e).map(Box::new);
    Ok(match e {
        Expr::True => M::True,
        Expr::False => M::False,
        Expr::Atom(p, None) => M::Atom(p),
        Expr::Atom(p, Some(_)) => {
            return Err(LogicError::WrongLogic(format!(
                "`{p}(..)` in a modal formula"
            )))
        }
        Expr::Not(a) => M::Not(b(a)?),
        Expr::And(x, y) => M::And(b(x)?, b(y)?),
        Expr::Or(x, y) => M::Or(b(x)?, b(y)?),
        Expr::Implies(x, y) => M::Implies(b(x)?, b(y)?),
        Expr::Box_(a) => M::Necessarily(b(a)?),
        Expr::Dia(a) => M::Possibly(b(a)?),
        Expr::Forall(..) | Expr::Exists(..) => {
            return Err(LogicError::WrongLogic(
                "quantifier in a modal formula".into(),
            ))
        }
    })
}

fn to_fo(e: Expr) -> Result<FoFormula, LogicError> {
    use FoFormula as F;
    let b = |e: Box<Expr>| to_fo(*e).map(Box::new);
    Ok(match e {
        Expr::True => F::True,
        Expr::False => F::False,
        Expr::Atom(r, Some(args)) => F::Atom { relation: r, args },
        Expr::Atom(r, None) => {
            return Err(LogicError::WrongLogic(format!(
                "atom `{r}` needs an argument list"
            )))
        }
        Expr::Not(a) => F::Not(b(a)?),
        Expr::And(x, y) => F::And(b(x)?, b(y)?),
        Expr::Or(x, y) => F::Or(b(x)?, b(y)?),
        Expr::Implies(x, y) => F::Implies(b(x)?, b(y)?),
        Expr::Forall(v, a) => F::Forall(v, b(a)?),
        Expr::Exists(v, a) => F::Exists(v, b(a)?),
        Expr::Box_(_) | Expr::Dia(_) => {
            return Err(LogicError::WrongLogic(
                "modal operator in a first-order formula".into(),
            ))
        }
    })
}

pub fn parse_modal(text: &str) -> Result<ModalFormula, LogicError> {
    to_modal(parse(text)?)
}

pub fn parse_fo(text: &str) -> Result<FoFormula, LogicError> {
    to_fo(parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let f = parse_modal("!p & q | r -> s -> t").unwrap();
        assert_eq!(f.to_string(), "(((!p & q) | r) -> (s -> t))");
        assert_eq!(parse_modal("box dia p").unwrap().to_string(), "box dia p");
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse_fo("exists v2. E(v1,v2) & R(v2)").unwrap();
        assert_eq!(f.to_string(), "(exists v2. (E(v1,v2) & R(v2)))");
        let g = parse_fo("(exists v2. E(v1,v2)) & R(v1)").unwrap();
        assert_eq!(g.to_string(), "((exists v2. E(v1,v2)) & R(v1))");
    }

    #[test]
    fn display_reparses() {
        for text in [
            "forall v1. exists v2. E(v1,v2) -> !R(v1)",
            "(exists v2. P(v2)) | true",
        ] {
            let f = parse_fo(text).unwrap();
            assert_eq!(parse_fo(&f.to_string()).unwrap(), f);
        }
        let m = parse_modal("dia (p -> box q) & !r").unwrap();
        assert_eq!(parse_modal(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(
            parse_fo("E(v1,"),
            Err(LogicError::Parse { offset: 5, .. })
        ));
        assert!(matches!(
            parse_fo("exists x. R(x)"),
            Err(LogicError::Parse { offset: 7, .. })
        ));
        assert!(matches!(
            parse_modal("p q"),
            Err(LogicError::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_modal("p - q"),
            Err(LogicError::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_modal("R(v1)"),
            Err(LogicError::WrongLogic(_))
        ));
        assert!(matches!(
            parse_fo("box R(v1)"),
            Err(LogicError::WrongLogic(_))
        ));
    }
}
