//! Session files: declarations of rings, maps, polynomials and representations,
//! followed by checks that refer to them by name.

use std::collections::HashMap;
use std::sync::Arc;

use freediv::construct::Mode;
use freediv::lift::PolyMap;
use freediv::poly::{parse_poly_at, MonomialOrder, Poly, Ring};
use freediv::rep::{build_quotient_map, build_rep, LinearRep, QuotientKind, RepKind};
use freediv::{Error, Result};
use serde::{Deserialize, Serialize};

/// Monomial order used for declared rings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OrderChoice {
    #[default]
    Grevlex,
    Lex,
    /// Ring weights first, then grevlex.
    Weighted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub order: OrderChoice,
    pub allow_nonhomogeneous: bool,
    /// Reduction steps allowed per command.
    pub budget: u64,
    /// Wall-clock limit for the whole session, in seconds.
    pub timeout: Option<u64>,
    pub seed: u64,
    pub json: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order: OrderChoice::Grevlex,
            allow_nonhomogeneous: false,
            budget: freediv::groebner::DEFAULT_STEP_BUDGET,
            timeout: None,
            seed: 0,
            json: false,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Ring(Arc<Ring>),
    Map(PolyMap),
    Poly(Poly),
    Rep(LinearRep),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Map(_) => "map",
            Object::Poly(_) => "poly",
            Object::Rep(_) => "rep",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    Derlog { f: Poly },
    Free { f: Poly },
    Pullback { mode: Mode, map: PolyMap, f: Poly },
    EulerLift { map: PolyMap, f: Poly, weights: Vec<i64> },
    /// `g = None` runs the canonical construction.
    Ffstar { h: Poly, g: Option<Vec<Poly>> },
    Castling { f: Poly, n: usize },
    Liftable { map: PolyMap },
    T1 { map: PolyMap },
    Invariants { rep: LinearRep, degree: usize },
    Stabilizer { rep: LinearRep },
}

#[derive(Clone, Debug)]
pub struct Check {
    pub line: usize,
    pub col: usize,
    /// The check as written, normalized to single spaces.
    pub text: String,
    pub command: Command,
}

#[derive(Clone, Debug)]
pub struct Declaration {
    pub line: usize,
    pub name: String,
    pub object: Object,
}

#[derive(Clone, Debug)]
pub enum Item {
    Declare(Declaration),
    Check(Check),
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    pub items: Vec<Item>,
    pub options: Options,
}

impl Session {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.items.iter().filter_map(|i| match i {
            Item::Check(c) => Some(c),
            Item::Declare(_) => None,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Parses and validates a session; errors carry the line and column.
pub fn parse_session(text: &str, options: &Options) -> Result<Session> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
        names: HashMap::new(),
        options: options.clone(),
    };
    let mut items = Vec::new();
    loop {
        p.skip_trivia();
        if p.at_end() {
            break;
        }
        p.statement(&mut items)?;
    }
    Ok(Session {
        items,
        options: options.clone(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    names: HashMap<String, Object>,
    options: Options,
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) {
        if let Some(&b) = self.src.get(self.pos) {
            self.pos += 1;
            if b == b'\n' {
                self.line += 1;
                self.col = 1;
            } else if b & 0xC0 != 0x80 {
                self.col += 1;
            }
        }
    }

    fn here(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn err_at(&self, at: Pos, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: at.line,
            col: at.col,
            msg: msg.into(),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        self.err_at(self.here(), msg)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_whitespace() => self.bump(),
                Some(b'#') => self.skip_line(),
                Some(b'/') if self.src.get(self.pos + 1) == Some(&b'/') => self.skip_line(),
                _ => break,
            }
        }
    }

    fn skip_line(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'\n' {
                break;
            }
            self.bump();
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.found_err(&format!("expected '{}'", c as char)))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        self.skip_trivia();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            for _ in 0..s.len() {
                self.bump();
            }
            Ok(())
        } else {
            Err(self.found_err(&format!("expected '{s}'")))
        }
    }

    fn found_err(&self, what: &str) -> Error {
        match self.peek() {
            None => self.err(format!("{what}, found end of input")),
            Some(b) => self.err(format!("{what}, found '{}'", b as char)),
        }
    }

    fn word(&mut self, dashes: bool) -> Result<(String, Pos)> {
        self.skip_trivia();
        let at = self.here();
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
            _ => return Err(self.found_err("expected a name")),
        }
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' || (dashes && b == b'-') {
                self.bump();
            } else {
                break;
            }
        }
        Ok((String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(), at))
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        self.word(false)
    }

    fn peek_word(&mut self) -> Option<String> {
        self.skip_trivia();
        let save = (self.pos, self.line, self.col);
        let w = self.ident().ok().map(|(w, _)| w);
        (self.pos, self.line, self.col) = save;
        w
    }

    fn integer(&mut self) -> Result<(i64, Pos)> {
        self.skip_trivia();
        let at = self.here();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.bump();
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == digits {
            return Err(self.found_err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse::<i64>()
            .map(|v| (v, at))
            .map_err(|_| self.err_at(at, format!("integer {s} out of range")))
    }

    fn count(&mut self) -> Result<usize> {
        let (v, at) = self.integer()?;
        usize::try_from(v).map_err(|_| self.err_at(at, "expected a nonnegative integer"))
    }

    /// Raw expression text up to a top-level `,`, `)` or `;`.
    fn expression(&mut self, ring: &Arc<Ring>) -> Result<Poly> {
        self.skip_trivia();
        let at = self.here();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(b) = self.peek() {
            match b {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                b',' | b';' if depth == 0 => break,
                _ => {}
            }
            self.bump();
        }
        let text = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.err_at(at, "expression is not valid UTF-8"))?;
        parse_poly_at(text, ring, at.line, at.col)
    }

    fn lookup(&self, name: &str, at: Pos) -> Result<&Object> {
        self.names
            .get(name)
            .ok_or_else(|| self.err_at(at, format!("unresolved name {name}")))
    }

    fn lookup_as<T>(&mut self, want: &str, pick: impl Fn(&Object) -> Option<T>) -> Result<T> {
        let (name, at) = self.ident()?;
        let obj = self.lookup(&name, at)?;
        pick(obj).ok_or_else(|| self.err_at(at, format!("{name} is a {}, not a {want}", obj.kind())))
    }

    fn poly_ref(&mut self) -> Result<Poly> {
        self.lookup_as("poly", |o| match o {
            Object::Poly(p) => Some(p.clone()),
            _ => None,
        })
    }

    fn map_ref(&mut self) -> Result<PolyMap> {
        self.lookup_as("map", |o| match o {
            Object::Map(m) => Some(m.clone()),
            _ => None,
        })
    }

    fn ring_ref(&mut self) -> Result<Arc<Ring>> {
        self.lookup_as("ring", |o| match o {
            Object::Ring(r) => Some(r.clone()),
            _ => None,
        })
    }

    fn define(&mut self, name: &str, at: Pos, object: Object, items: &mut Vec<Item>) -> Result<()> {
        if self.names.contains_key(name) {
            return Err(self.err_at(at, format!("name {name} is already declared")));
        }
        self.names.insert(name.to_string(), object.clone());
        items.push(Item::Declare(Declaration {
            line: at.line,
            name: name.to_string(),
            object,
        }));
        Ok(())
    }

    fn statement(&mut self, items: &mut Vec<Item>) -> Result<()> {
        let (kw, at) = self.ident()?;
        match kw.as_str() {
            "ring" => self.ring_decl(items)?,
            "map" => self.map_decl(items)?,
            "poly" => self.poly_decl(items)?,
            "rep" => self.rep_decl(items)?,
            "check" => {
                let start = self.pos;
                let command = self.check()?;
                let text = String::from_utf8_lossy(&self.src[start..self.pos])
                    .split_whitespace()
                    .collect::<Vec<_>>()
                    .join(" ");
                items.push(Item::Check(Check {
                    line: at.line,
                    col: at.col,
                    text,
                    command,
                }));
            }
            other => {
                return Err(self.err_at(
                    at,
                    format!("unknown statement {other:?}; expected ring, map, poly, rep or check"),
                ))
            }
        }
        self.expect(b';')
    }

    fn ring_decl(&mut self, items: &mut Vec<Item>) -> Result<()> {
        let (name, at) = self.ident()?;
        self.expect(b'=')?;
        self.expect(b'[')?;
        let mut vars = Vec::new();
        if !self.eat(b']') {
            loop {
                let (v, vat) = self.ident()?;
                if vars.contains(&v) {
                    return Err(self.err_at(vat, format!("duplicate variable {v}")));
                }
                vars.push(v);
                if self.eat(b']') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        let mut weights = vec![1; vars.len()];
        if self.peek_word().as_deref() == Some("weights") {
            self.ident()?;
            self.expect(b'(')?;
            let wat = self.here();
            let mut ws = Vec::new();
            if !self.eat(b')') {
                loop {
                    let (w, at) = self.integer()?;
                    if w <= 0 {
                        return Err(self.err_at(at, "weights must be positive"));
                    }
                    ws.push(w);
                    if self.eat(b')') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
            if ws.len() != vars.len() {
                return Err(self.err_at(
                    wat,
                    format!("{} weights for {} variables", ws.len(), vars.len()),
                ));
            }
            weights = ws;
        }
        let order = match self.options.order {
            OrderChoice::Grevlex => MonomialOrder::Grevlex,
            OrderChoice::Lex => MonomialOrder::Lex,
            OrderChoice::Weighted => MonomialOrder::Weighted(weights.clone()),
        };
        let ring = Ring::with_order(&vars, &weights, order).map_err(|e| self.err_at(at, e.to_string()))?;
        self.define(&name, at, Object::Ring(ring), items)
    }

    fn map_decl(&mut self, items: &mut Vec<Item>) -> Result<()> {
        let (name, at) = self.ident()?;
        if self.eat(b'=') {
            return self.quotient_decl(&name, at, items);
        }
        self.expect(b':')?;
        let source = self.ring_ref()?;
        self.expect_str("->")?;
        let tat = {
            self.skip_trivia();
            self.here()
        };
        let target = self.ring_ref()?;
        self.expect(b'=')?;
        self.expect(b'(')?;
        let lat = self.here();
        let mut comps = Vec::new();
        if !self.eat(b')') {
            loop {
                comps.push(self.expression(&source)?);
                if self.eat(b')') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        if comps.len() != target.nvars() {
            return Err(self.err_at(
                lat,
                format!(
                    "map has {} components but the target ring has {} variables",
                    comps.len(),
                    target.nvars()
                ),
            ));
        }
        let map = PolyMap::new(&source, &target, comps).map_err(|e| self.err_at(tat, e.to_string()))?;
        self.define(&name, at, Object::Map(map), items)
    }

    /// `map NAME = quotient(kind, args)`; also declares `NAME_src`, `NAME_tgt` and `NAME_rep`.
    fn quotient_decl(&mut self, name: &str, at: Pos, items: &mut Vec<Item>) -> Result<()> {
        let (q, qat) = self.ident()?;
        if q != "quotient" {
            return Err(self.err_at(qat, "expected 'quotient' or ': SOURCE -> TARGET'"));
        }
        self.expect(b'(')?;
        let (kind, kat) = self.ident()?;
        let mut args = Vec::new();
        while self.eat(b',') {
            args.push(self.count()?);
        }
        self.expect(b')')?;
        let need = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(self.err_at(kat, format!("{kind} takes {k} arguments, {} given", args.len())))
            }
        };
        let qk = match kind.as_str() {
            "castling_minors" => {
                need(1)?;
                QuotientKind::CastlingMinors(args[0])
            }
            "sym_matrix" => {
                need(2)?;
                QuotientKind::SymMatrix(args[0], args[1])
            }
            "skew_form" => {
                need(2)?;
                QuotientKind::SkewForm(args[0], args[1])
            }
            "charpoly" => {
                need(1)?;
                QuotientKind::CharpolyCoeffs(args[0])
            }
            "sub_pfaffians" => {
                need(1)?;
                QuotientKind::SubPfaffians(args[0])
            }
            other => return Err(self.err_at(kat, format!("unknown quotient kind {other}"))),
        };
        let qm = build_quotient_map(&qk).map_err(|e| self.err_at(kat, e.to_string()))?;
        self.define(&format!("{name}_src"), at, Object::Ring(qm.map.source.clone()), items)?;
        self.define(&format!("{name}_tgt"), at, Object::Ring(qm.map.target.clone()), items)?;
        self.define(&format!("{name}_rep"), at, Object::Rep(qm.rep.clone()), items)?;
        self.define(name, at, Object::Map(qm.map), items)
    }

    fn poly_decl(&mut self, items: &mut Vec<Item>) -> Result<()> {
        let (name, at) = self.ident()?;
        let (on, oat) = self.ident()?;
        if on != "on" {
            return Err(self.err_at(oat, "expected 'on'"));
        }
        let ring = self.ring_ref()?;
        self.expect(b'=')?;
        let p = self.expression(&ring)?;
        self.define(&name, at, Object::Poly(p), items)
    }

    fn rep_decl(&mut self, items: &mut Vec<Item>) -> Result<()> {
        let (name, at) = self.ident()?;
        self.expect(b'=')?;
        let kind = self.rep_kind()?;
        let rep = build_rep(&kind).map_err(|e| self.err_at(at, e.to_string()))?;
        self.define(&format!("{name}_ring"), at, Object::Ring(rep.ring.clone()), items)?;
        self.define(&name, at, Object::Rep(rep), items)
    }

    fn rep_kind(&mut self) -> Result<RepKind> {
        let (kind, at) = self.ident()?;
        if let Some(Object::Rep(r)) = self.names.get(&kind) {
            return Ok(RepKind::Custom(r.clone()));
        }
        if kind == "sl2" {
            if self.eat(b'(') {
                self.expect(b')')?;
            }
            return Ok(RepKind::Sl2Standard);
        }
        self.expect(b'(')?;
        let ints = |p: &mut Parser, k: usize| -> Result<Vec<usize>> {
            let mut v = Vec::new();
            for i in 0..k {
                if i > 0 {
                    p.expect(b',')?;
                }
                v.push(p.count()?);
            }
            Ok(v)
        };
        let out = match kind.as_str() {
            "sl_left" => {
                let v = ints(self, 2)?;
                RepKind::SlLeft { n: v[0], m: v[1] }
            }
            "o_left" => {
                let v = ints(self, 2)?;
                RepKind::OLeft { n: v[0], m: v[1] }
            }
            "sp_left" => {
                let v = ints(self, 2)?;
                RepKind::SpLeft { n: v[0], m: v[1] }
            }
            "so_sym2" => RepKind::SoSym2 { n: ints(self, 1)?[0] },
            "gl_conj_symm" => RepKind::GlConjSymm { m: ints(self, 1)?[0] },
            "gl_conj_skew" => RepKind::GlConjSkew { m: ints(self, 1)?[0] },
            "sym_power" => {
                let base = self.rep_kind()?;
                self.expect(b',')?;
                let k = self.count()?;
                RepKind::SymPower {
                    base: Box::new(base),
                    k,
                }
            }
            "tensor" => {
                let a = self.rep_kind()?;
                self.expect(b',')?;
                let b = self.rep_kind()?;
                RepKind::Tensor {
                    a: Box::new(a),
                    b: Box::new(b),
                }
            }
            other => return Err(self.err_at(at, format!("unknown representation {other}"))),
        };
        self.expect(b')')?;
        Ok(out)
    }

    fn check(&mut self) -> Result<Command> {
        let (cmd, at) = self.word(true)?;
        Ok(match cmd.as_str() {
            "derlog" => Command::Derlog { f: self.poly_ref()? },
            "free" => Command::Free { f: self.poly_ref()? },
            "pullback" => {
                let (m, mat) = self.ident()?;
                let mode = match m.as_str() {
                    "strong" => Mode::Strong,
                    "weak" => Mode::Weak,
                    _ => return Err(self.err_at(mat, "expected 'strong' or 'weak'")),
                };
                let map = self.map_ref()?;
                let f = self.target_poly(&map)?;
                Command::Pullback { mode, map, f }
            }
            "euler-lift" => {
                let map = self.map_ref()?;
                let f = self.target_poly(&map)?;
                let weights = if self.eat(b'(') {
                    let wat = self.here();
                    let mut w = Vec::new();
                    loop {
                        w.push(self.integer()?.0);
                        if self.eat(b')') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                    if w.len() != map.m() {
                        return Err(self.err_at(wat, format!("{} weights for {} target variables", w.len(), map.m())));
                    }
                    w
                } else {
                    map.target.weights().to_vec()
                };
                Command::EulerLift { map, f, weights }
            }
            "ffstar" => {
                let h = self.poly_ref()?;
                let g = if self.eat(b'(') {
                    let mut g = Vec::new();
                    loop {
                        g.push(self.expression(h.ring())?);
                        if self.eat(b')') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                    Some(g)
                } else {
                    None
                };
                Command::Ffstar { h, g }
            }
            "castling" => {
                self.skip_trivia();
                let pat = self.here();
                let f = self.poly_ref()?;
                self.skip_trivia();
                let n = if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                    self.count()?
                } else {
                    f.ring().nvars().saturating_sub(1)
                };
                if f.ring().nvars() != n + 1 || n == 0 {
                    return Err(self.err_at(
                        pat,
                        format!("castling with n = {n} needs a poly in {} variables", n + 1),
                    ));
                }
                Command::Castling { f, n }
            }
            "liftable" => Command::Liftable { map: self.map_ref()? },
            "t1" => Command::T1 { map: self.map_ref()? },
            "invariants" => {
                let rep = self.rep_ref()?;
                let degree = self.count()?;
                Command::Invariants { rep, degree }
            }
            "stabilizer" => Command::Stabilizer { rep: self.rep_ref()? },
            other => {
                return Err(self.err_at(
                    at,
                    format!(
                        "unknown check {other:?}; expected derlog, free, pullback, euler-lift, ffstar, castling, liftable, t1, invariants or stabilizer"
                    ),
                ))
            }
        })
    }

    fn rep_ref(&mut self) -> Result<LinearRep> {
        self.lookup_as("rep", |o| match o {
            Object::Rep(r) => Some(r.clone()),
            _ => None,
        })
    }

    fn target_poly(&mut self, map: &PolyMap) -> Result<Poly> {
        self.skip_trivia();
        let at = self.here();
        let f = self.poly_ref()?;
        if !f.ring().same_vars(&map.target) {
            return Err(self.err_at(at, "poly is not on the target ring of the map"));
        }
        Ok(f)
    }
}
