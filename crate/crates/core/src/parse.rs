//! Text formats for task inputs and learned programs.
//!
//! All three input files share one Prolog-like surface syntax: statements
//! are terms ending in `.`, comments run from `%` to end of line.
//!
//! * bias file: `head_pred(name,arity).`, `body_pred(name,arity).`,
//!   optional `max_vars(n).` / `max_body(n).` / `max_clauses(n).`,
//!   optional `type(name,(t1,...,tk)).` and
//!   `direction(name,(in|out,...)).` declarations.
//! * examples file: `pos(atom).` / `neg(atom).` with ground atoms.
//! * background file: ground facts plus `builtin(name,arity).` directives
//!   enabling relations from the built-in registry.
//!
//! Programs print one clause per line as `head :- b1,b2,...,bn.` with
//! variables lettered `A,B,C,...` in canonical order, and parse back to
//! the same hypothesis.

use crate::logic::{Atom, Clause, GroundAtom, Hypothesis, PredSym, Term, Value};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use std::time::Duration;

/// Positioned parse failure. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

type Result<T> = std::result::Result<T, ParseError>;

/// Argument direction marker from a `direction(...)` declaration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// Which predicates may head clauses, which may appear in bodies, and any
/// typing or dataflow restrictions on their arguments.
#[derive(Debug, Clone, Default)]
pub struct DeclarationBias {
    pub head_preds: Vec<PredSym>,
    pub body_preds: Vec<PredSym>,
    pub types: HashMap<PredSym, Vec<Arc<str>>>,
    pub directions: HashMap<PredSym, Vec<Direction>>,
}

/// Limits on the hypothesis space and on the search itself.
#[derive(Debug, Clone)]
pub struct SearchBounds {
    pub max_vars: usize,
    pub max_body_literals: usize,
    pub max_clauses: usize,
    /// Cap on total body literals per program; the search stops once the
    /// size ladder passes it. Defaults to max_clauses * max_body_literals.
    pub max_total_literals: usize,
    /// Cap on the number of candidate programs tested; `None` is unbounded.
    pub max_programs: Option<usize>,
    pub eval_step_limit: usize,
    /// Wall-clock budget for one learning run; `None` is unbounded.
    pub wall_timeout: Option<Duration>,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_vars: 6,
            max_body_literals: 6,
            max_clauses: 3,
            max_total_literals: 18,
            max_programs: None,
            eval_step_limit: 100_000,
            wall_timeout: None,
        }
    }
}

/// Positive and negative example atoms. All atoms share one predicate.
#[derive(Debug, Clone, Default)]
pub struct ExampleSet {
    pub pos: Vec<GroundAtom>,
    pub neg: Vec<GroundAtom>,
}

/// Ground facts plus the enabled built-in relations.
#[derive(Debug, Clone, Default)]
pub struct BackgroundKnowledge {
    pub facts: Vec<GroundAtom>,
    pub builtins: Vec<PredSym>,
}

// ── Tokenizer ────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LowerIdent(String),
    UpperIdent(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Neck, // :-
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'%' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    /// Next token with its start position, or None at end of input.
    fn next(&mut self) -> Result<Option<(Tok, usize, usize)>> {
        self.skip_trivia();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let (line, col) = (self.line, self.col);
        let c = self.src[self.pos];
        let tok = match c {
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'[' => {
                self.bump();
                Tok::LBracket
            }
            b']' => {
                self.bump();
                Tok::RBracket
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b'.' => {
                self.bump();
                Tok::Dot
            }
            b':' => {
                self.bump();
                if self.pos < self.src.len() && self.src[self.pos] == b'-' {
                    self.bump();
                    Tok::Neck
                } else {
                    return self.err("expected '-' after ':'");
                }
            }
            b'-' | b'0'..=b'9' => {
                let negative = c == b'-';
                if negative {
                    self.bump();
                    if self.pos >= self.src.len() || !self.src[self.pos].is_ascii_digit() {
                        return self.err("expected digits after '-'");
                    }
                }
                let mut n: i64 = 0;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    let d = (self.bump() - b'0') as i64;
                    n = n
                        .checked_mul(10)
                        .and_then(|x| x.checked_add(d))
                        .ok_or(ParseError {
                            line,
                            col,
                            msg: "integer literal out of range".into(),
                        })?;
                }
                Tok::Int(if negative { -n } else { n })
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.bump();
                }
                let word = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii idents")
                    .to_string();
                if c.is_ascii_uppercase() {
                    Tok::UpperIdent(word)
                } else {
                    Tok::LowerIdent(word)
                }
            }
            other => {
                return self.err(format!("unexpected character '{}'", other as char));
            }
        };
        Ok(Some((tok, line, col)))
    }
}

// ── Statement parser ─────────────────────────────────────────────────────

/// Generic parsed term: enough structure to interpret every statement
/// form in the three file formats.
#[derive(Debug, Clone, PartialEq)]
enum Node {
    Sym(String),
    Var(String),
    Int(i64),
    List(Vec<Node>),
    /// `name(arg1,...,argk)`; a bare tuple `(a,b)` gets an empty name.
    Compound(String, Vec<Node>),
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, usize, usize)>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            lexer: Lexer::new(src),
            peeked: None,
        }
    }

    fn peek(&mut self) -> Result<Option<&(Tok, usize, usize)>> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next()?;
        }
        Ok(self.peeked.as_ref())
    }

    fn advance(&mut self) -> Result<Option<(Tok, usize, usize)>> {
        if let Some(t) = self.peeked.take() {
            return Ok(Some(t));
        }
        self.lexer.next()
    }

    fn err_at<T>(&self, line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
        Err(ParseError {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(usize, usize)> {
        match self.advance()? {
            Some((tok, line, col)) if tok == want => Ok((line, col)),
            Some((tok, line, col)) => {
                self.err_at(line, col, format!("expected {what}, found {tok:?}"))
            }
            None => self.err_at(
                self.lexer.line,
                self.lexer.col,
                format!("expected {what}, found end of input"),
            ),
        }
    }

    fn parse_term(&mut self) -> Result<(Node, usize, usize)> {
        match self.advance()? {
            Some((Tok::LowerIdent(name), line, col)) => {
                if matches!(self.peek()?, Some((Tok::LParen, _, _))) {
                    self.advance()?;
                    let args = self.parse_term_list(Tok::RParen)?;
                    Ok((Node::Compound(name, args), line, col))
                } else {
                    Ok((Node::Sym(name), line, col))
                }
            }
            Some((Tok::UpperIdent(name), line, col)) => Ok((Node::Var(name), line, col)),
            Some((Tok::Int(n), line, col)) => Ok((Node::Int(n), line, col)),
            Some((Tok::LBracket, line, col)) => {
                if matches!(self.peek()?, Some((Tok::RBracket, _, _))) {
                    self.advance()?;
                    return Ok((Node::List(vec![]), line, col));
                }
                let items = self.parse_term_list(Tok::RBracket)?;
                Ok((Node::List(items), line, col))
            }
            Some((Tok::LParen, line, col)) => {
                let items = self.parse_term_list(Tok::RParen)?;
                Ok((Node::Compound(String::new(), items), line, col))
            }
            Some((tok, line, col)) => self.err_at(line, col, format!("expected term, found {tok:?}")),
            None => self.err_at(self.lexer.line, self.lexer.col, "expected term, found end of input"),
        }
    }

    fn parse_term_list(&mut self, close: Tok) -> Result<Vec<Node>> {
        let mut items = Vec::new();
        loop {
            let (node, _, _) = self.parse_term()?;
            items.push(node);
            match self.advance()? {
                Some((Tok::Comma, _, _)) => continue,
                Some((tok, _, _)) if tok == close => return Ok(items),
                Some((tok, line, col)) => {
                    return self.err_at(line, col, format!("expected ',' or closer, found {tok:?}"))
                }
                None => {
                    return self.err_at(
                        self.lexer.line,
                        self.lexer.col,
                        "unterminated term list",
                    )
                }
            }
        }
    }

    /// Statements for fact-like files: one term per statement.
    fn parse_statements(&mut self) -> Result<Vec<(Node, usize, usize)>> {
        let mut out = Vec::new();
        while self.peek()?.is_some() {
            let t = self.parse_term()?;
            self.expect(Tok::Dot, "'.'")?;
            out.push(t);
        }
        Ok(out)
    }
}

// ── Interpretation helpers ───────────────────────────────────────────────

fn node_to_value(node: &Node, line: usize, col: usize) -> Result<Value> {
    match node {
        Node::Sym(s) => Ok(Value::sym(s)),
        Node::Int(n) => Ok(Value::Int(*n)),
        Node::List(items) => Ok(Value::List(
            items
                .iter()
                .map(|n| node_to_value(n, line, col))
                .collect::<Result<_>>()?,
        )),
        Node::Var(v) => Err(ParseError {
            line,
            col,
            msg: format!("variable {v} not allowed in ground context"),
        }),
        Node::Compound(_, _) => Err(ParseError {
            line,
            col,
            msg: "compound term not allowed in ground context".into(),
        }),
    }
}

fn node_to_ground_atom(node: &Node, line: usize, col: usize) -> Result<GroundAtom> {
    match node {
        Node::Sym(name) => Ok(GroundAtom::new(PredSym::new(name, 0), vec![])),
        Node::Compound(name, args) if !name.is_empty() => {
            let vals = args
                .iter()
                .map(|a| node_to_value(a, line, col))
                .collect::<Result<Vec<_>>>()?;
            Ok(GroundAtom::new(PredSym::new(name, vals.len()), vals))
        }
        _ => Err(ParseError {
            line,
            col,
            msg: "expected a ground atom".into(),
        }),
    }
}

fn expect_name_arity(args: &[Node], line: usize, col: usize, what: &str) -> Result<PredSym> {
    match args {
        [Node::Sym(name), Node::Int(arity)] if *arity >= 0 => {
            Ok(PredSym::new(name, *arity as usize))
        }
        _ => Err(ParseError {
            line,
            col,
            msg: format!("{what} expects (name, arity)"),
        }),
    }
}

fn expect_positive_int(args: &[Node], line: usize, col: usize, what: &str) -> Result<usize> {
    match args {
        [Node::Int(n)] if *n > 0 => Ok(*n as usize),
        _ => Err(ParseError {
            line,
            col,
            msg: format!("{what} expects a positive integer"),
        }),
    }
}

// ── Public operations ────────────────────────────────────────────────────

/// Parse a bias file into predicate declarations plus search bounds.
/// Bounds not mentioned keep their defaults.
pub fn parse_bias(text: &str) -> Result<(DeclarationBias, SearchBounds)> {
    let mut bias = DeclarationBias::default();
    let mut bounds = SearchBounds::default();

    for (node, line, col) in Parser::new(text).parse_statements()? {
        let (name, args) = match &node {
            Node::Compound(name, args) if !name.is_empty() => (name.as_str(), args.as_slice()),
            _ => {
                return Err(ParseError {
                    line,
                    col,
                    msg: "expected a declaration like head_pred(name,arity)".into(),
                })
            }
        };
        match name {
            "head_pred" => {
                let p = expect_name_arity(args, line, col, "head_pred")?;
                if !bias.head_preds.contains(&p) {
                    bias.head_preds.push(p);
                }
            }
            "body_pred" => {
                let p = expect_name_arity(args, line, col, "body_pred")?;
                if !bias.body_preds.contains(&p) {
                    bias.body_preds.push(p);
                }
            }
            "max_vars" => bounds.max_vars = expect_positive_int(args, line, col, "max_vars")?,
            "max_body" => {
                bounds.max_body_literals = expect_positive_int(args, line, col, "max_body")?;
            }
            "max_clauses" => {
                bounds.max_clauses = expect_positive_int(args, line, col, "max_clauses")?;
            }
            "type" => {
                let (pred, names) = parse_pred_annotation(args, line, col, "type")?;
                let tys: Vec<Arc<str>> = names.iter().map(|s| Arc::from(s.as_str())).collect();
                if let Some(prev) = bias.types.get(&pred) {
                    if *prev != tys {
                        return Err(ParseError {
                            line,
                            col,
                            msg: format!("conflicting type declaration for {pred}"),
                        });
                    }
                }
                bias.types.insert(pred, tys);
            }
            "direction" => {
                let (pred, names) = parse_pred_annotation(args, line, col, "direction")?;
                let dirs = names
                    .iter()
                    .map(|s| match s.as_str() {
                        "in" => Ok(Direction::In),
                        "out" => Ok(Direction::Out),
                        other => Err(ParseError {
                            line,
                            col,
                            msg: format!("direction must be in or out, found {other}"),
                        }),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(prev) = bias.directions.get(&pred) {
                    if *prev != dirs {
                        return Err(ParseError {
                            line,
                            col,
                            msg: format!("conflicting direction declaration for {pred}"),
                        });
                    }
                }
                bias.directions.insert(pred, dirs);
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    msg: format!("unknown bias declaration {other}"),
                })
            }
        }
    }

    if bias.head_preds.is_empty() {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: "bias declares no head_pred".into(),
        });
    }
    for p in bias.head_preds.iter().chain(bias.body_preds.iter()) {
        if let Some(tys) = bias.types.get(p) {
            if tys.len() != p.arity {
                return Err(ParseError {
                    line: 1,
                    col: 1,
                    msg: format!("type declaration for {p} has wrong arity"),
                });
            }
        }
        if let Some(dirs) = bias.directions.get(p) {
            if dirs.len() != p.arity {
                return Err(ParseError {
                    line: 1,
                    col: 1,
                    msg: format!("direction declaration for {p} has wrong arity"),
                });
            }
        }
    }
    bounds.max_total_literals = bounds.max_clauses * bounds.max_body_literals;
    Ok((bias, bounds))
}

fn parse_pred_annotation(
    args: &[Node],
    line: usize,
    col: usize,
    what: &str,
) -> Result<(PredSym, Vec<String>)> {
    match args {
        [Node::Sym(name), Node::Compound(tag, items)] if tag.is_empty() => {
            let names = items
                .iter()
                .map(|n| match n {
                    Node::Sym(s) => Ok(s.clone()),
                    _ => Err(ParseError {
                        line,
                        col,
                        msg: format!("{what} annotation entries must be names"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((PredSym::new(name, names.len()), names))
        }
        [Node::Sym(name), Node::Sym(single)] => {
            Ok((PredSym::new(name, 1), vec![single.clone()]))
        }
        _ => Err(ParseError {
            line,
            col,
            msg: format!("{what} expects (name, (entry,...))"),
        }),
    }
}

/// Parse an examples file of `pos(atom).` / `neg(atom).` statements.
pub fn parse_examples(text: &str) -> Result<ExampleSet> {
    let mut ex = ExampleSet::default();
    let mut target: Option<PredSym> = None;

    for (node, line, col) in Parser::new(text).parse_statements()? {
        let (label, inner) = match &node {
            Node::Compound(name, args) if (name == "pos" || name == "neg") && args.len() == 1 => {
                (name.as_str(), &args[0])
            }
            _ => {
                return Err(ParseError {
                    line,
                    col,
                    msg: "expected pos(atom) or neg(atom)".into(),
                })
            }
        };
        let atom = node_to_ground_atom(inner, line, col)?;
        match &target {
            None => target = Some(atom.pred.clone()),
            Some(t) if *t != atom.pred => {
                return Err(ParseError {
                    line,
                    col,
                    msg: format!("examples mix predicates {t} and {}", atom.pred),
                })
            }
            _ => {}
        }
        let bucket = if label == "pos" { &mut ex.pos } else { &mut ex.neg };
        if !bucket.contains(&atom) {
            bucket.push(atom);
        }
    }

    if let Some(overlap) = ex.pos.iter().find(|a| ex.neg.contains(a)) {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: format!("example {overlap} appears as both pos and neg"),
        });
    }
    Ok(ex)
}

/// Parse a background file: ground facts plus `builtin(name,arity).`
/// directives. Builtin names are validated against the registry.
pub fn parse_bk(text: &str) -> Result<BackgroundKnowledge> {
    let mut bk = BackgroundKnowledge::default();
    for (node, line, col) in Parser::new(text).parse_statements()? {
        if let Node::Compound(name, args) = &node {
            if name == "builtin" {
                let p = expect_name_arity(args, line, col, "builtin")?;
                if !crate::eval::registry_contains(&p) {
                    return Err(ParseError {
                        line,
                        col,
                        msg: format!("unknown builtin {p}"),
                    });
                }
                if !bk.builtins.contains(&p) {
                    bk.builtins.push(p);
                }
                continue;
            }
        }
        let fact = node_to_ground_atom(&node, line, col)?;
        if !bk.facts.contains(&fact) {
            bk.facts.push(fact);
        }
    }
    for f in &bk.facts {
        if bk.builtins.contains(&f.pred) {
            return Err(ParseError {
                line: 1,
                col: 1,
                msg: format!("{} declared builtin but also given facts", f.pred),
            });
        }
    }
    Ok(bk)
}

/// Cross-file validation once bias, examples and background are all known.
pub fn validate_task(
    bias: &DeclarationBias,
    ex: &ExampleSet,
    bk: &BackgroundKnowledge,
) -> Result<()> {
    let err = |msg: String| ParseError { line: 1, col: 1, msg };
    for p in &bias.head_preds {
        if bk.builtins.contains(p) {
            return Err(err(format!("head predicate {p} is also an enabled builtin")));
        }
    }
    if let Some(e) = ex.pos.iter().chain(ex.neg.iter()).next() {
        if !bias.head_preds.contains(&e.pred) {
            return Err(err(format!(
                "example predicate {} is not declared as a head_pred",
                e.pred
            )));
        }
    }
    Ok(())
}

/// Render a hypothesis, one clause per line, variables lettered in
/// canonical order.
pub fn print_hypothesis(h: &Hypothesis) -> String {
    let mut out = String::new();
    for clause in h.clauses() {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&print_atom(&clause.head));
        if !clause.body.is_empty() {
            out.push_str(" :- ");
            for (i, a) in clause.body.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&print_atom(a));
            }
        }
        out.push('.');
    }
    out
}

fn var_name(mut id: u32) -> String {
    // A..Z, then AA, AB, ... spreadsheet style.
    let mut name = String::new();
    loop {
        name.insert(0, (b'A' + (id % 26) as u8) as char);
        if id < 26 {
            break;
        }
        id = id / 26 - 1;
    }
    name
}

fn print_atom(a: &Atom) -> String {
    let mut s = String::new();
    s.push_str(&a.pred.name);
    if !a.args.is_empty() {
        s.push('(');
        for (i, t) in a.args.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            match t {
                Term::Var(v) => s.push_str(&var_name(*v)),
                Term::Const(c) => s.push_str(&c.to_string()),
            }
        }
        s.push(')');
    }
    s
}

/// Parse a program: clauses `head :- b1,...,bn.` (or bare facts `head.`),
/// uppercase identifiers as variables scoped per clause.
pub fn parse_hypothesis(text: &str) -> Result<Hypothesis> {
    let mut parser = Parser::new(text);
    let mut clauses = Vec::new();
    while parser.peek()?.is_some() {
        let (head_node, hl, hc) = parser.parse_term()?;
        let mut vars: HashMap<String, u32> = HashMap::new();
        let head = node_to_atom(&head_node, hl, hc, &mut vars)?;
        let mut body = Vec::new();
        match parser.advance()? {
            Some((Tok::Dot, _, _)) => {}
            Some((Tok::Neck, _, _)) => loop {
                let (node, line, col) = parser.parse_term()?;
                body.push(node_to_atom(&node, line, col, &mut vars)?);
                match parser.advance()? {
                    Some((Tok::Comma, _, _)) => continue,
                    Some((Tok::Dot, _, _)) => break,
                    Some((tok, line, col)) => {
                        return Err(ParseError {
                            line,
                            col,
                            msg: format!("expected ',' or '.', found {tok:?}"),
                        })
                    }
                    None => {
                        return Err(ParseError {
                            line: hl,
                            col: hc,
                            msg: "unterminated clause".into(),
                        })
                    }
                }
            },
            Some((tok, line, col)) => {
                return Err(ParseError {
                    line,
                    col,
                    msg: format!("expected ':-' or '.', found {tok:?}"),
                })
            }
            None => {
                return Err(ParseError {
                    line: hl,
                    col: hc,
                    msg: "unterminated clause".into(),
                })
            }
        }
        for t in &head.args {
            if let Term::Var(v) = t {
                let in_body = body
                    .iter()
                    .any(|a| a.args.iter().any(|bt| bt == &Term::Var(*v)));
                if !in_body {
                    return Err(ParseError {
                        line: hl,
                        col: hc,
                        msg: "head variable does not appear in the body".into(),
                    });
                }
            }
        }
        clauses.push(Clause::new(head, body));
    }
    Ok(Hypothesis::new(clauses))
}

fn node_to_atom(
    node: &Node,
    line: usize,
    col: usize,
    vars: &mut HashMap<String, u32>,
) -> Result<Atom> {
    match node {
        Node::Sym(name) => Ok(Atom::new(PredSym::new(name, 0), vec![])),
        Node::Compound(name, args) if !name.is_empty() => {
            let mut terms = Vec::with_capacity(args.len());
            for a in args {
                terms.push(match a {
                    Node::Var(v) => {
                        let next = vars.len() as u32;
                        Term::Var(*vars.entry(v.clone()).or_insert(next))
                    }
                    other => Term::Const(node_to_value(other, line, col)?),
                });
            }
            Ok(Atom::new(PredSym::new(name, terms.len()), terms))
        }
        _ => Err(ParseError {
            line,
            col,
            msg: "expected an atom".into(),
        }),
    }
}
