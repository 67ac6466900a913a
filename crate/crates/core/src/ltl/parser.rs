//! Recursive-descent parser for the keyboard LTL syntax.
//!
//! ```text
//! implication := disjunction ('->' implication)?
//! disjunction := conjunction ('||' conjunction)*
//! conjunction := temporal ('&&' temporal)*
//! temporal    := unary (('U' | 'R') temporal)?
//! unary       := ('!' | 'X' | '[]' | '<>') unary | primary
//! primary     := 'true' | 'false' | identifier | '(' implication ')'
//! ```

use super::{Formula, LtlError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Always,
    Eventually,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::True => "'true'".into(),
            Token::False => "'false'".into(),
            Token::Ident(name) => format!("identifier '{name}'"),
            Token::Not => "'!'".into(),
            Token::And => "'&&'".into(),
            Token::Or => "'||'".into(),
            Token::Implies => "'->'".into(),
            Token::Next => "'X'".into(),
            Token::Until => "'U'".into(),
            Token::Release => "'R'".into(),
            Token::Always => "'[]'".into(),
            Token::Eventually => "'<>'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

const OPERAND_START: &[&str] = &["'true'", "'false'", "identifier", "'!'", "'X'", "'[]'", "'<>'", "'('"];

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, LtlError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = bytes.get(i..i + 2);
        let (token, width) = match (c, two) {
            (_, Some(b"&&")) => (Token::And, 2),
            (_, Some(b"||")) => (Token::Or, 2),
            (_, Some(b"->")) => (Token::Implies, 2),
            (_, Some(b"[]")) => (Token::Always, 2),
            (_, Some(b"<>")) => (Token::Eventually, 2),
            (b'!', _) => (Token::Not, 1),
            (b'(', _) => (Token::LParen, 1),
            (b')', _) => (Token::RParen, 1),
            (c, _) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                let mut end = i;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                    end += 1;
                }
                let word = &text[start..end];
                let token = match word {
                    "true" => Token::True,
                    "false" => Token::False,
                    "X" => Token::Next,
                    "U" => Token::Until,
                    "R" => Token::Release,
                    _ => Token::Ident(word.to_string()),
                };
                (token, end - start)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(LtlError::UnknownCharacter { offset: i, ch });
            }
        };
        tokens.push((i, token));
        i += width;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error(&self, expected: &[&str]) -> LtlError {
        LtlError::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().map(Token::describe).unwrap_or_else(|| "end of input".into()),
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, LtlError> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, LtlError> {
        let mut items = vec![self.conjunction()?];
        while self.eat(&Token::Or) {
            items.push(self.conjunction()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::Or(items) })
    }

    fn conjunction(&mut self) -> Result<Formula, LtlError> {
        let mut items = vec![self.temporal()?];
        while self.eat(&Token::And) {
            items.push(self.temporal()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::And(items) })
    }

    fn temporal(&mut self) -> Result<Formula, LtlError> {
        let lhs = self.unary()?;
        if self.eat(&Token::Until) {
            return Ok(Formula::until(lhs, self.temporal()?));
        }
        if self.eat(&Token::Release) {
            return Ok(Formula::release(lhs, self.temporal()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LtlError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Some(Token::Not) => Formula::not,
            Some(Token::Next) => Formula::next,
            Some(Token::Always) => Formula::always,
            Some(Token::Eventually) => Formula::eventually,
            _ => return self.primary(),
        };
        self.pos += 1;
        Ok(wrap(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, LtlError> {
        let formula = match self.peek() {
            Some(Token::True) => Formula::True,
            Some(Token::False) => Formula::False,
            Some(Token::Ident(name)) => Formula::Atom(name.clone()),
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.implication()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error(&["')'", "'&&'", "'||'", "'->'", "'U'", "'R'"]));
                }
                return Ok(inner);
            }
            _ => return Err(self.error(OPERAND_START)),
        };
        self.pos += 1;
        Ok(formula)
    }
}

/// Parses an LTL query such as `[](<>p1 && <>p2 && !p3)`.
pub fn parse_ltl(text: &str) -> Result<Formula, LtlError> {
    if text.trim().is_empty() {
        return Err(LtlError::EmptyInput);
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len() };
    let formula = parser.implication()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error(&["'&&'", "'||'", "'->'", "'U'", "'R'", "end of input"]));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize) -> Formula {
        Formula::atom(format!("p{i}"))
    }

    #[test]
    fn surveillance_query_shape() {
        let f = parse_ltl("[](<>p1 && <>p2 && !p3)").unwrap();
        let expected = Formula::always(Formula::and(vec![
            Formula::eventually(p(1)),
            Formula::eventually(p(2)),
            Formula::not(p(3)),
        ]));
        assert_eq!(f, expected);
    }

    #[test]
    fn literal_true() {
        assert_eq!(parse_ltl("true").unwrap(), Formula::True);
        assert_eq!(parse_ltl(" false ").unwrap(), Formula::False);
    }

    #[test]
    fn dangling_until_reports_end_of_input() {
        match parse_ltl("p1 U") {
            Err(LtlError::Syntax { offset, found, expected }) => {
                assert_eq!(offset, 4);
                assert_eq!(found, "end of input");
                assert!(expected.iter().any(|e| e == "identifier"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_character() {
        assert!(matches!(
            parse_ltl("p1 $ p2"),
            Err(LtlError::UnknownCharacter { offset: 3, ch: '$' })
        ));
        assert!(matches!(parse_ltl("   "), Err(LtlError::EmptyInput)));
    }

    #[test]
    fn precedence_levels() {
        // unary > U/R > && > || > ->
        let f = parse_ltl("!p1 U p2 && p3 || p4 -> p5").unwrap();
        let until = Formula::until(Formula::not(p(1)), p(2));
        let expected = Formula::implies(Formula::or(vec![Formula::and(vec![until, p(3)]), p(4)]), p(5));
        assert_eq!(f, expected);
    }

    #[test]
    fn until_and_implication_are_right_associative() {
        assert_eq!(
            parse_ltl("p1 U p2 R p3").unwrap(),
            Formula::until(p(1), Formula::release(p(2), p(3)))
        );
        assert_eq!(
            parse_ltl("p1 -> p2 -> p3").unwrap(),
            Formula::implies(p(1), Formula::implies(p(2), p(3)))
        );
    }

    #[test]
    fn unbalanced_parentheses() {
        assert!(matches!(parse_ltl("(p1 && p2"), Err(LtlError::Syntax { offset: 9, .. })));
        assert!(matches!(parse_ltl("p1 )"), Err(LtlError::Syntax { offset: 3, .. })));
    }

    #[test]
    fn display_round_trips() {
        let src = "[]((p4 || p5) -> X((!p4 && !p5) U (p1 || p2 || p3))) && X p1 R false";
        let f = parse_ltl(src).unwrap();
        assert_eq!(parse_ltl(&f.to_string()).unwrap(), f);
    }
}
