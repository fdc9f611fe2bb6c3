//! Concrete syntax: networks, assertions, path programs, Hoare triples and
//! valuation files. Whitespace-insensitive, `#` starts a line comment.

use crate::assertion::{Assertion, CmpOp, Term};
use crate::error::{ModelError, ParseError};
use crate::model::{
    build_valuation, validate_network, Network, RawFormula, RawNetwork, Valuation,
};
use crate::program::{HoareTriple, PathProgram};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    DotDot,
    ColonEq,
    Arrow,
    Plus,
    Minus,
    Bang,
    Amp,
    Pipe,
    FatArrow,
    Eq,
    Lt,
    Gt,
    Le,
    Ge,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Int(n) => format!("`{}`", n),
            Tok::Eof => "end of input".to_string(),
            other => format!(
                "`{}`",
                match other {
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::Comma => ",",
                    Tok::Semi => ";",
                    Tok::Colon => ":",
                    Tok::DotDot => "..",
                    Tok::ColonEq => ":=",
                    Tok::Arrow => "<-",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Bang => "!",
                    Tok::Amp => "&",
                    Tok::Pipe => "|",
                    Tok::FatArrow => "=>",
                    Tok::Eq => "=",
                    Tok::Lt => "<",
                    Tok::Gt => ">",
                    Tok::Le => "<=",
                    Tok::Ge => ">=",
                    _ => unreachable!(),
                }
            ),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    macro_rules! push {
        ($tok:expr, $len:expr) => {{
            out.push(Lexed {
                tok: $tok,
                line,
                column,
            });
            column += $len;
        }};
    }
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                column += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: i64 = s.parse().map_err(|_| ParseError::Syntax {
                    line,
                    column,
                    message: format!("integer literal `{}` out of range", s),
                })?;
                push!(Tok::Int(n), s.len());
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let len = s.len();
                push!(Tok::Ident(s), len);
            }
            _ => {
                chars.next();
                let two = chars.peek().copied();
                let (tok, len) = match (c, two) {
                    (':', Some('=')) => (Tok::ColonEq, 2),
                    ('<', Some('-')) => (Tok::Arrow, 2),
                    ('<', Some('=')) => (Tok::Le, 2),
                    ('>', Some('=')) => (Tok::Ge, 2),
                    ('=', Some('>')) => (Tok::FatArrow, 2),
                    ('.', Some('.')) => (Tok::DotDot, 2),
                    ('{', _) => (Tok::LBrace, 1),
                    ('}', _) => (Tok::RBrace, 1),
                    ('(', _) => (Tok::LParen, 1),
                    (')', _) => (Tok::RParen, 1),
                    ('[', _) => (Tok::LBracket, 1),
                    (']', _) => (Tok::RBracket, 1),
                    (',', _) => (Tok::Comma, 1),
                    (';', _) => (Tok::Semi, 1),
                    (':', _) => (Tok::Colon, 1),
                    ('+', _) => (Tok::Plus, 1),
                    ('-', _) => (Tok::Minus, 1),
                    ('!', _) => (Tok::Bang, 1),
                    ('&', _) => (Tok::Amp, 1),
                    ('|', _) => (Tok::Pipe, 1),
                    ('=', _) => (Tok::Eq, 1),
                    ('<', _) => (Tok::Lt, 1),
                    ('>', _) => (Tok::Gt, 1),
                    other => {
                        return Err(ParseError::Syntax {
                            line,
                            column,
                            message: format!("unexpected character `{}`", other.0),
                        })
                    }
                };
                if len == 2 {
                    chars.next();
                }
                push!(tok, len);
            }
        }
    }
    out.push(Lexed {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'n> {
    toks: Vec<Lexed>,
    pos: usize,
    network: Option<&'n Network>,
}

impl<'n> Parser<'n> {
    fn new(text: &str, network: Option<&'n Network>) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            network,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let at = &self.toks[self.pos];
        Err(ParseError::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        if self.eat_keyword(word) {
            Ok(())
        } else {
            self.err(format!(
                "expected `{}`, found {}",
                word,
                self.peek().describe()
            ))
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        if let Tok::Ident(s) = self.peek() {
            if s == word {
                self.bump();
                return true;
            }
        }
        false
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected identifier, found {}", other.describe())),
        }
    }

    fn expect_int(&mut self) -> Result<i64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            other => self.err(format!("expected integer, found {}", other.describe())),
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.err(format!("unexpected {}", self.peek().describe()))
        }
    }

    fn net(&self) -> &'n Network {
        self.network.expect("parser needs a network for this rule")
    }

    // ---- network ----

    fn network_file(&mut self) -> Result<RawNetwork, ParseError> {
        let mut raw = RawNetwork::default();
        self.expect_keyword("network")?;
        self.expect(Tok::LBrace)?;
        loop {
            if self.eat_keyword("var") {
                let name = self.expect_ident()?;
                self.expect(Tok::Colon)?;
                let lo = self.expect_int()?;
                if lo != 0 {
                    return self.err("variable ranges must start at 0");
                }
                self.expect(Tok::DotDot)?;
                let bound = self.expect_int()?;
                if bound < 1 {
                    return self.err("variable bound must be positive");
                }
                self.expect(Tok::Semi)?;
                raw.variables.push((name, bound));
            } else if self.eat_keyword("multiplex") {
                let name = self.expect_ident()?;
                self.expect(Tok::Colon)?;
                let formula = self.mformula()?;
                self.expect(Tok::Semi)?;
                raw.multiplexes.push((name, formula));
            } else if self.eat_keyword("target") {
                let var = self.expect_ident()?;
                self.expect(Tok::Arrow)?;
                let mut mxs = vec![self.expect_ident()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    mxs.push(self.expect_ident()?);
                }
                self.expect(Tok::Semi)?;
                raw.targets.push((var, mxs));
            } else if self.at_keyword("param") {
                let (var, omega, value) = self.param_statement()?;
                raw.params.push((var, omega, value));
            } else {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect_eof()?;
        Ok(raw)
    }

    /// `param K[v,{m,...}] = n ;` (shared with valuation files)
    fn param_statement(&mut self) -> Result<(String, Vec<String>, i64), ParseError> {
        self.expect_keyword("param")?;
        let (var, omega) = self.param_ref()?;
        self.expect(Tok::Eq)?;
        let value = self.expect_int()?;
        self.expect(Tok::Semi)?;
        Ok((var, omega, value))
    }

    fn param_ref(&mut self) -> Result<(String, Vec<String>), ParseError> {
        self.expect_keyword("K")?;
        self.expect(Tok::LBracket)?;
        let var = self.expect_ident()?;
        self.expect(Tok::Comma)?;
        self.expect(Tok::LBrace)?;
        let mut omega = Vec::new();
        if *self.peek() != Tok::RBrace {
            omega.push(self.expect_ident()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                omega.push(self.expect_ident()?);
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect(Tok::RBracket)?;
        Ok((var, omega))
    }

    fn mformula(&mut self) -> Result<RawFormula, ParseError> {
        let mut left = self.mformula_and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.mformula_and()?;
            left = RawFormula::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn mformula_and(&mut self) -> Result<RawFormula, ParseError> {
        let mut left = self.mformula_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.mformula_unary()?;
            left = RawFormula::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn mformula_unary(&mut self) -> Result<RawFormula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(RawFormula::Not(Box::new(self.mformula_unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.mformula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::Ge {
                    self.bump();
                    let s = self.expect_int()?;
                    Ok(RawFormula::VarAtom(name, s))
                } else {
                    Ok(RawFormula::NameAtom(name))
                }
            }
            other => self.err(format!(
                "expected multiplex formula, found {}",
                other.describe()
            )),
        }
    }

    // ---- assertions ----

    fn assertion(&mut self) -> Result<Assertion, ParseError> {
        let left = self.assertion_or()?;
        if *self.peek() == Tok::FatArrow {
            self.bump();
            let right = self.assertion()?; // right-associative
            Ok(Assertion::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn assertion_or(&mut self) -> Result<Assertion, ParseError> {
        let mut left = self.assertion_and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.assertion_and()?;
            left = Assertion::or(left, right);
        }
        Ok(left)
    }

    fn assertion_and(&mut self) -> Result<Assertion, ParseError> {
        let mut left = self.assertion_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.assertion_unary()?;
            left = Assertion::and(left, right);
        }
        Ok(left)
    }

    fn assertion_unary(&mut self) -> Result<Assertion, ParseError> {
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(Assertion::not(self.assertion_unary()?));
        }
        self.assertion_primary()
    }

    fn assertion_primary(&mut self) -> Result<Assertion, ParseError> {
        if self.eat_keyword("true") {
            return Ok(Assertion::True);
        }
        if self.eat_keyword("false") {
            return Ok(Assertion::False);
        }
        // `(` may open a parenthesized assertion or a parenthesized term;
        // try the comparison atom first and fall back.
        let start = self.pos;
        match self.comparison_atom() {
            Ok(atom) => Ok(atom),
            Err(atom_err) => {
                self.pos = start;
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let inner = self.assertion()?;
                    self.expect(Tok::RParen)?;
                    Ok(inner)
                } else {
                    Err(atom_err)
                }
            }
        }
    }

    fn comparison_atom(&mut self) -> Result<Assertion, ParseError> {
        let lhs = self.term()?;
        let op = match self.peek() {
            Tok::Eq => CmpOp::Eq,
            Tok::Lt => CmpOp::Lt,
            Tok::Gt => CmpOp::Gt,
            Tok::Le => CmpOp::Le,
            Tok::Ge => CmpOp::Ge,
            other => {
                return self.err(format!(
                    "expected comparison operator, found {}",
                    other.describe()
                ))
            }
        };
        self.bump();
        let rhs = self.term()?;
        Ok(Assertion::atom(lhs, op, rhs))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut left = self.term_factor()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    left = Term::Add(Box::new(left), Box::new(self.term_factor()?));
                }
                Tok::Minus => {
                    self.bump();
                    left = Term::Sub(Box::new(left), Box::new(self.term_factor()?));
                }
                _ => return Ok(left),
            }
        }
    }

    fn term_factor(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Term::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if name == "K" && *self.peek2() == Tok::LBracket {
                    let (var, omega) = self.param_ref()?;
                    let (p, _) = crate::model::resolve_param(self.net(), &var, &omega)
                        .map_err(ParseError::Model)?;
                    return Ok(Term::Param(p));
                }
                self.bump();
                match self.net().lookup_var(&name) {
                    Some(v) => Ok(Term::Var(v)),
                    None => Err(ParseError::Model(ModelError::UnknownName(name))),
                }
            }
            other => self.err(format!("expected term, found {}", other.describe())),
        }
    }

    // ---- path programs ----

    fn program(&mut self) -> Result<PathProgram, ParseError> {
        let mut parts = vec![self.instruction()?];
        while *self.peek() == Tok::Semi {
            self.bump();
            parts.push(self.instruction()?);
        }
        if parts.len() > 1 && parts.contains(&PathProgram::Epsilon) {
            return self.err("`eps` is only allowed as a whole program or quantifier branch");
        }
        Ok(PathProgram::seq(parts))
    }

    fn instruction(&mut self) -> Result<PathProgram, ParseError> {
        if self.eat_keyword("eps") {
            return Ok(PathProgram::Epsilon);
        }
        if self.eat_keyword("assert") {
            self.expect(Tok::LParen)?;
            let a = self.assertion()?;
            self.expect(Tok::RParen)?;
            return Ok(PathProgram::Assert(a));
        }
        if self.eat_keyword("if") {
            let cond = self.assertion()?;
            self.expect_keyword("then")?;
            let then_branch = self.program()?;
            self.expect_keyword("else")?;
            let else_branch = self.program()?;
            self.expect_keyword("end")?;
            return Ok(PathProgram::If {
                cond,
                then_branch: Box::new(then_branch),
                else_branch: Box::new(else_branch),
            });
        }
        if self.eat_keyword("while") {
            let cond = self.assertion()?;
            self.expect_keyword("with")?;
            let invariant = self.assertion()?;
            self.expect_keyword("do")?;
            let body = self.program()?;
            self.expect_keyword("end")?;
            return Ok(PathProgram::While {
                cond,
                invariant,
                body: Box::new(body),
            });
        }
        for (word, forall) in [("forall", true), ("exists", false)] {
            if self.at_keyword(word) {
                self.bump();
                self.expect(Tok::LParen)?;
                let mut branches = vec![self.program()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    branches.push(self.program()?);
                }
                self.expect(Tok::RParen)?;
                if branches.len() < 2 {
                    return self.err(format!("`{}` needs at least two branches", word));
                }
                // flatten nested quantifiers of the same kind
                let mut flat = Vec::new();
                for b in branches {
                    match (forall, b) {
                        (true, PathProgram::Forall(inner)) => flat.extend(inner),
                        (false, PathProgram::Exists(inner)) => flat.extend(inner),
                        (_, other) => flat.push(other),
                    }
                }
                return Ok(if forall {
                    PathProgram::Forall(flat)
                } else {
                    PathProgram::Exists(flat)
                });
            }
        }
        let name = self.expect_ident()?;
        let v = match self.net().lookup_var(&name) {
            Some(v) => v,
            None => return Err(ParseError::Model(ModelError::UnknownName(name))),
        };
        match self.peek().clone() {
            Tok::Plus => {
                self.bump();
                Ok(PathProgram::Inc(v))
            }
            Tok::Minus => {
                self.bump();
                Ok(PathProgram::Dec(v))
            }
            Tok::ColonEq => {
                self.bump();
                let n = self.expect_int()?;
                let bound = self.net().bound(v);
                if n < 0 || n > bound {
                    return Err(ParseError::Model(ModelError::AssignOutOfRange {
                        var: name,
                        value: n,
                        bound,
                    }));
                }
                Ok(PathProgram::Assign(v, n))
            }
            other => self.err(format!(
                "expected `+`, `-` or `:=` after variable, found {}",
                other.describe()
            )),
        }
    }

    // ---- triple ----

    fn triple(&mut self) -> Result<HoareTriple, ParseError> {
        self.expect_keyword("pre")?;
        self.expect(Tok::LBrace)?;
        let pre = self.assertion()?;
        self.expect(Tok::RBrace)?;
        self.expect_keyword("program")?;
        self.expect(Tok::LBrace)?;
        let program = self.program()?;
        self.expect(Tok::RBrace)?;
        self.expect_keyword("post")?;
        self.expect(Tok::LBrace)?;
        let post = self.assertion()?;
        self.expect(Tok::RBrace)?;
        self.expect_eof()?;
        Ok(HoareTriple { pre, program, post })
    }

    // ---- valuations ----

    fn valuation_file(&mut self) -> Result<Vec<(String, Vec<String>, i64)>, ParseError> {
        let mut entries = Vec::new();
        while *self.peek() != Tok::Eof {
            entries.push(self.param_statement()?);
        }
        Ok(entries)
    }
}

/// Parse and validate a network description.
pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let raw = Parser::new(text, None)?.network_file()?;
    validate_network(&raw).map_err(ParseError::Model)
}

pub fn parse_assertion(network: &Network, text: &str) -> Result<Assertion, ParseError> {
    let mut p = Parser::new(text, Some(network))?;
    let a = p.assertion()?;
    p.expect_eof()?;
    Ok(a)
}

pub fn parse_program(network: &Network, text: &str) -> Result<PathProgram, ParseError> {
    let mut p = Parser::new(text, Some(network))?;
    let prog = p.program()?;
    p.expect_eof()?;
    Ok(prog)
}

pub fn parse_triple(network: &Network, text: &str) -> Result<HoareTriple, ParseError> {
    Parser::new(text, Some(network))?.triple()
}

/// Parse a valuation file: `param K[v,{...}] = n;` statements. The result
/// must cover every parameter symbol not pinned by the network.
pub fn parse_valuation(network: &Network, text: &str) -> Result<Valuation, ParseError> {
    let entries = Parser::new(text, Some(network))?.valuation_file()?;
    build_valuation(network, &entries).map_err(ParseError::Model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::State;

    #[test]
    fn parse_loop2_network_from_text() {
        let net = fixtures::loop2_network();
        assert_eq!(net.var_count(), 2);
        let a = net.lookup_var("a").unwrap();
        assert_eq!(net.bound(a), 2);
        assert_eq!(net.params().len(), 6);
    }

    #[test]
    fn feedforward_network_has_seven_params() {
        let net = fixtures::feedforward_network();
        let names: Vec<String> = (0..net.params().len())
            .map(|i| net.display_param(crate::model::ParamId(i)))
            .collect();
        assert_eq!(
            names,
            vec![
                "K[a,{}]",
                "K[b,{}]",
                "K[b,{lambda}]",
                "K[b,{sigma}]",
                "K[b,{lambda,sigma}]",
                "K[c,{}]",
                "K[c,{l}]",
            ]
        );
    }

    #[test]
    fn parse_simple_programs() {
        let net = fixtures::feedforward_network();
        let p = parse_program(&net, "b+; c+; b-").unwrap();
        assert_eq!(net.show_program(&p), "b+; c+; b-");
        let p = parse_program(&net, "eps").unwrap();
        assert_eq!(p, PathProgram::Epsilon);
        let p = parse_program(&net, "while b<1 with true do exists(b+,b-,c+,c-) end").unwrap();
        assert_eq!(
            net.show_program(&p),
            "while b<1 with true do exists(b+, b-, c+, c-) end"
        );
    }

    #[test]
    fn roundtrip_programs() {
        let net = fixtures::loop2_network();
        let samples = [
            "b+; b-",
            "eps",
            "forall(a+, b+)",
            "forall(a+, b+); exists(a+, b+); exists(eps, b+)",
            "if a=1 then a-; b+ else a+ end",
            "while a<2 with a>=0 do a+ end",
            "a := 2; assert(a=2 & b<=1)",
        ];
        for text in samples {
            let p = parse_program(&net, text).unwrap();
            let printed = net.show_program(&p);
            let again = parse_program(&net, &printed).unwrap();
            assert_eq!(p, again, "roundtrip failed for {}", text);
        }
    }

    #[test]
    fn assign_out_of_range_is_rejected() {
        let net = fixtures::loop2_network();
        assert!(matches!(
            parse_program(&net, "b := 2"),
            Err(ParseError::Model(ModelError::AssignOutOfRange { .. }))
        ));
    }

    #[test]
    fn eps_not_allowed_inside_sequence() {
        let net = fixtures::loop2_network();
        assert!(parse_program(&net, "a+; eps").is_err());
        // but fine as a quantifier branch
        assert!(parse_program(&net, "exists(eps, b+)").is_ok());
    }

    #[test]
    fn quantifier_needs_two_branches() {
        let net = fixtures::loop2_network();
        assert!(parse_program(&net, "forall(a+)").is_err());
    }

    #[test]
    fn nested_quantifiers_flatten() {
        let net = fixtures::loop2_network();
        let p = parse_program(&net, "exists(exists(a+, a-), b+)").unwrap();
        match p {
            PathProgram::Exists(branches) => assert_eq!(branches.len(), 3),
            other => panic!("expected exists, got {:?}", other),
        }
    }

    #[test]
    fn parse_triple_file() {
        let net = fixtures::feedforward_network();
        let t = parse_triple(
            &net,
            "pre { a=1 & b=0 & c=0 } program { b+; c+; b- } post { b=0 }",
        )
        .unwrap();
        assert_eq!(net.show_assertion(&t.post), "b=0");
        assert_eq!(net.show_program(&t.program), "b+; c+; b-");
    }

    #[test]
    fn parse_valuation_requires_totality() {
        let net = fixtures::loop2_network();
        let err = parse_valuation(&net, "param K[a,{}] = 1;");
        assert!(matches!(
            err,
            Err(ParseError::Model(ModelError::IncompleteValuation(_)))
        ));
        let val = fixtures::loop2_valuation(&net);
        let a = net.lookup_var("a").unwrap();
        let mu1 = net.lookup_mx("mu1").unwrap();
        let mu3 = net.lookup_mx("mu3").unwrap();
        assert_eq!(val.level(net.lookup_param(a, &[mu1, mu3]).unwrap()), 2);
        let _ = State(vec![0, 0]);
    }

    #[test]
    fn syntax_error_carries_position() {
        let net = fixtures::loop2_network();
        match parse_assertion(&net, "a =") {
            Err(ParseError::Syntax { line, column, .. }) => {
                assert_eq!(line, 1);
                assert!(column >= 3);
            }
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn parenthesized_term_vs_assertion() {
        let net = fixtures::loop2_network();
        let a = parse_assertion(&net, "(a+1)=2").unwrap();
        assert_eq!(net.show_assertion(&a), "a+1=2");
        let a = parse_assertion(&net, "(a=1)").unwrap();
        assert_eq!(net.show_assertion(&a), "a=1");
        let a = parse_assertion(&net, "((a=1) | b=0) & K[a,{}]>=1").unwrap();
        let printed = net.show_assertion(&a);
        assert_eq!(parse_assertion(&net, &printed).unwrap(), a);
    }
}
