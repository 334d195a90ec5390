//! Tokens, abstract syntax and the recursive-descent parser.

use std::fmt;

use crate::dimset::DimSet;
use crate::name::Name;
use crate::trees::Tree;

use super::{ErrorKind, SurfaceError};

/// 1-based line and column of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const SYMBOLS: [&str; 13] = ["->", "=>", "{", "}", "[", "]", "(", ")", ",", ";", ":", "*", "="];

pub const KEYWORDS: [&str; 10] = ["computad", "let", "in", "ps", "coh", "comp", "id", "susp", "op", "homfactor"];

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, Loc)>, SurfaceError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let loc = Loc { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if is_name_char(c) {
            let start = i;
            loop {
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '.' && is_name_char(chars[i + 1]) {
                    i += 1;
                } else {
                    break;
                }
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Ident(s), loc));
            continue;
        }
        let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                i += s.len();
                col += s.len();
                out.push((Tok::Sym(s), loc));
            }
            None => {
                return Err(SurfaceError::new(ErrorKind::Syntax, loc, format!("unexpected character `{c}`")))
            }
        }
    }
    out.push((Tok::Eof, Loc { line, col }));
    Ok(out)
}

/// Surface expressions, each carrying the location of its first token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(Name, Loc),
    Coh { tree: Tree, src: Box<Expr>, tgt: Box<Expr>, sub: Vec<(Name, Loc, Expr)>, loc: Loc },
    Comp { n: usize, k: usize, m: usize, args: Option<Box<(Expr, Expr)>>, loc: Loc },
    Id(Box<Expr>, Loc),
    Susp(Box<Expr>, Loc),
    Op(DimSet, Box<Expr>, Loc),
    HomFactor(Box<Expr>, Loc),
}

impl Expr {
    pub fn loc(&self) -> Loc {
        match self {
            Expr::Name(_, l)
            | Expr::Coh { loc: l, .. }
            | Expr::Comp { loc: l, .. }
            | Expr::Id(_, l)
            | Expr::Susp(_, l)
            | Expr::Op(_, _, l)
            | Expr::HomFactor(_, l) => *l,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenDecl {
    pub name: Name,
    pub loc: Loc,
    /// `None` for `: *`.
    pub attach: Option<(Expr, Expr)>,
}

/// The computad a binding lives in, when it is not the current one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomeExpr {
    Named(Name, Loc),
    /// The free computad on the positions of a tree.
    Pasting(Tree, Loc),
    Susp(Box<HomeExpr>, Loc),
    Op(DimSet, Box<HomeExpr>, Loc),
    Inline(Vec<GenDecl>, Loc),
}

impl HomeExpr {
    pub fn loc(&self) -> Loc {
        match self {
            HomeExpr::Named(_, l)
            | HomeExpr::Pasting(_, l)
            | HomeExpr::Susp(_, l)
            | HomeExpr::Op(_, _, l)
            | HomeExpr::Inline(_, l) => *l,
        }
    }
}

impl fmt::Display for HomeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomeExpr::Named(n, _) => write!(f, "{n}"),
            HomeExpr::Pasting(t, _) => write!(f, "ps {t}"),
            HomeExpr::Susp(h, _) => write!(f, "susp({h})"),
            HomeExpr::Op(w, h, _) => write!(f, "op{w}({h})"),
            HomeExpr::Inline(..) => f.write_str("{..}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Computad { name: Name, loc: Loc, gens: Vec<GenDecl> },
    Let { name: Name, loc: Loc, home: Option<HomeExpr>, body: Expr },
}

struct Parser {
    toks: Vec<(Tok, Loc)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn loc(&self) -> Loc {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Loc) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SurfaceError> {
        Err(SurfaceError::new(ErrorKind::Syntax, self.loc(), msg))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn expect(&mut self, s: &'static str) -> Result<Loc, SurfaceError> {
        if self.is_sym(s) {
            Ok(self.bump().1)
        } else {
            self.err(format!("expected `{s}`, found {}", self.peek()))
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn name(&mut self, what: &str) -> Result<(Name, Loc), SurfaceError> {
        match self.peek().clone() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => self.err(format!("keyword `{s}` cannot be a {what}")),
            Tok::Ident(s) => {
                let loc = self.bump().1;
                Ok((Name::from(s), loc))
            }
            t => self.err(format!("expected a {what}, found {t}")),
        }
    }

    fn number(&mut self) -> Result<usize, SurfaceError> {
        match self.peek().clone() {
            Tok::Ident(s) => match s.parse() {
                Ok(n) => {
                    self.bump();
                    Ok(n)
                }
                Err(_) => self.err(format!("expected a number, found `{s}`")),
            },
            t => self.err(format!("expected a number, found {t}")),
        }
    }

    fn file(&mut self) -> Result<Vec<Decl>, SurfaceError> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            out.push(self.decl()?);
        }
        Ok(out)
    }

    fn decl(&mut self) -> Result<Decl, SurfaceError> {
        if self.keyword("computad") {
            self.bump();
            let (name, loc) = self.name("computad name")?;
            let gens = self.generators()?;
            Ok(Decl::Computad { name, loc, gens })
        } else if self.keyword("let") {
            self.bump();
            let (name, loc) = self.name("binding name")?;
            let home = if self.keyword("in") {
                self.bump();
                Some(self.home()?)
            } else {
                None
            };
            self.expect("=")?;
            let body = self.expr()?;
            Ok(Decl::Let { name, loc, home, body })
        } else {
            self.err(format!("expected `computad` or `let`, found {}", self.peek()))
        }
    }

    fn generators(&mut self) -> Result<Vec<GenDecl>, SurfaceError> {
        self.expect("{")?;
        let mut gens = Vec::new();
        while !self.is_sym("}") {
            let (g, gl) = self.name("generator name")?;
            self.expect(":")?;
            let attach = if self.is_sym("*") {
                self.bump();
                None
            } else {
                let s = self.expr()?;
                self.expect("->")?;
                Some((s, self.expr()?))
            };
            gens.push(GenDecl { name: g, loc: gl, attach });
            if !self.is_sym("}") {
                self.expect(";")?;
            }
        }
        self.expect("}")?;
        Ok(gens)
    }

    fn home(&mut self) -> Result<HomeExpr, SurfaceError> {
        let loc = self.loc();
        if self.is_sym("{") {
            return Ok(HomeExpr::Inline(self.generators()?, loc));
        }
        if self.keyword("ps") {
            self.bump();
            return Ok(HomeExpr::Pasting(self.tree()?, loc));
        }
        if self.keyword("susp") {
            self.bump();
            self.expect("(")?;
            let h = self.home()?;
            self.expect(")")?;
            return Ok(HomeExpr::Susp(Box::new(h), loc));
        }
        if self.keyword("op") {
            self.bump();
            let w = self.dims()?;
            self.expect("(")?;
            let h = self.home()?;
            self.expect(")")?;
            return Ok(HomeExpr::Op(w, Box::new(h), loc));
        }
        let (n, l) = self.name("computad name")?;
        Ok(HomeExpr::Named(n, l))
    }

    fn dims(&mut self) -> Result<DimSet, SurfaceError> {
        self.expect("{")?;
        let mut dims = Vec::new();
        while !self.is_sym("}") {
            let at = self.loc();
            let d = self.number()?;
            if d == 0 {
                return Err(SurfaceError::new(ErrorKind::Syntax, at, "dimensions in `op{..}` start at 1"));
            }
            dims.push(d);
            if !self.is_sym("}") {
                self.expect(",")?;
            }
        }
        self.expect("}")?;
        Ok(DimSet::of(&dims))
    }

    fn tree(&mut self) -> Result<Tree, SurfaceError> {
        self.expect("[")?;
        let mut kids = Vec::new();
        while !self.is_sym("]") {
            kids.push(self.tree()?);
            if !self.is_sym("]") {
                self.expect(",")?;
            }
        }
        self.expect("]")?;
        Ok(Tree::new(kids))
    }

    fn parens(&mut self) -> Result<Box<Expr>, SurfaceError> {
        self.expect("(")?;
        let e = self.expr()?;
        self.expect(")")?;
        Ok(Box::new(e))
    }

    fn expr(&mut self) -> Result<Expr, SurfaceError> {
        let loc = self.loc();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            t => return self.err(format!("expected an expression, found {t}")),
        };
        match kw.as_str() {
            "coh" => {
                self.bump();
                let tree = self.tree()?;
                self.expect("{")?;
                let src = self.expr()?;
                self.expect("->")?;
                let tgt = self.expr()?;
                self.expect("}")?;
                self.expect("[")?;
                let mut sub = Vec::new();
                while !self.is_sym("]") {
                    let (p, pl) = self.name("position")?;
                    self.expect("=>")?;
                    sub.push((p, pl, self.expr()?));
                    if !self.is_sym("]") {
                        self.expect(",")?;
                    }
                }
                self.expect("]")?;
                Ok(Expr::Coh { tree, src: Box::new(src), tgt: Box::new(tgt), sub, loc })
            }
            "comp" => {
                self.bump();
                self.expect("(")?;
                let n = self.number()?;
                self.expect(",")?;
                let k = self.number()?;
                self.expect(",")?;
                let m = self.number()?;
                self.expect(")")?;
                self.expect("[")?;
                let args = if self.is_sym("]") {
                    None
                } else {
                    let a = self.expr()?;
                    self.expect(",")?;
                    Some(Box::new((a, self.expr()?)))
                };
                self.expect("]")?;
                Ok(Expr::Comp { n, k, m, args, loc })
            }
            "id" => {
                self.bump();
                Ok(Expr::Id(self.parens()?, loc))
            }
            "susp" => {
                self.bump();
                Ok(Expr::Susp(self.parens()?, loc))
            }
            "homfactor" => {
                self.bump();
                Ok(Expr::HomFactor(self.parens()?, loc))
            }
            "op" => {
                self.bump();
                let w = self.dims()?;
                Ok(Expr::Op(w, self.parens()?, loc))
            }
            _ => {
                let (n, l) = self.name("name")?;
                Ok(Expr::Name(n, l))
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Vec<Decl>, SurfaceError> {
    Parser { toks: lex(src)?, pos: 0 }.file()
}

/// Parse a single expression.
pub fn parse_expr(src: &str) -> Result<Expr, SurfaceError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after expression", p.peek()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dotted_names_are_single_tokens() {
        let toks = lex("1.0 => a.b'").unwrap();
        assert_eq!(toks[0].0, Tok::Ident("1.0".into()));
        assert_eq!(toks[1].0, Tok::Sym("=>"));
        assert_eq!(toks[2].0, Tok::Ident("a.b'".into()));
    }

    #[test]
    fn parses_a_computad_without_trailing_separator() {
        let d = parse("computad C { x : * ; a : id(x) -> id(x) ; b : id(x) -> id(x) }").unwrap();
        let Decl::Computad { gens, .. } = &d[0] else { panic!() };
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn syntax_errors_are_located() {
        let e = parse("let x =\n  coh [[],[] {0 -> 2} []").unwrap_err();
        assert_eq!((e.loc.line, e.loc.col), (2, 14));
        assert_eq!(e.code(), "SyntaxError");
    }

    #[test]
    fn keywords_are_reserved() {
        assert!(parse("let id = x").is_err());
    }
}
