//! The group description language.
//!
//! ```text
//! # comment
//! group <name> = cyclic <n> | symmetric <n> | alternating <n> | dihedral <n>
//!              | klein4 | table [[...], ...] | product <g1> <g2>
//!              | quotient <g> by <subgroup> | inner <g>
//! operator <label> on <name> = [i0, i1, ...] | identity | null | inverse
//!                            | power <k> | conj <element>
//!
//! <subgroup> = [i, ...]          Ω-subgroup generated by the elements
//!            | normal [i, ...]   normal Ω-subgroup generated by the elements
//!            | socle | trivial | whole
//! ```
//!
//! Statements are line-oriented; a bracketed list may continue over several
//! lines. An `operator` statement rebinds its group with the extra operator.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ogroup_core::{
    build_named, direct_product, generated_subgroup, normal_closure, quotient, socle, with_inner_operators, Error,
    GroupKind, Limits, OmegaGroup, Operator, Subgroup,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Named(GroupKind, usize),
    Table(Vec<Vec<usize>>),
    Product(String, String),
    Quotient(String, SubgroupExpr),
    Inner(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupExpr {
    Generated(Vec<usize>),
    Normal(Vec<usize>),
    Socle,
    Trivial,
    Whole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorExpr {
    Explicit(Vec<usize>),
    Identity,
    Null,
    Inverse,
    Power(usize),
    Conj(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Group {
        name: String,
        expr: GroupExpr,
    },
    Operator {
        label: String,
        on: String,
        action: OperatorExpr,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub statement: Statement,
    pub line: usize,
    pub column: usize,
}

/// A parsed description: statements in source order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupSpec {
    pub statements: Vec<Located>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax(String),
    Semantic(Error),
    UnknownGroup(String),
}

/// A parse or elaboration failure with its source position (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub kind: SpecErrorKind,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            SpecErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            SpecErrorKind::Semantic(e) => write!(f, "{e}"),
            SpecErrorKind::UnknownGroup(g) => write!(f, "unknown group `{g}`"),
        }
    }
}

impl std::error::Error for SpecError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(usize),
    Open,
    Close,
    Comma,
    Equals,
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | ':' | '.' | '-' | '\'')
}

fn lex(text: &str) -> Result<Vec<Token>, SpecError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (l, raw) in text.lines().enumerate() {
        let line = l + 1;
        let content = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = |tok| Token { tok, line, column };
            match c {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '[' => {
                    depth += 1;
                    out.push(single(Tok::Open));
                }
                ']' => {
                    if depth == 0 {
                        return Err(syntax(line, column, "unbalanced `]`"));
                    }
                    depth -= 1;
                    out.push(single(Tok::Close));
                }
                ',' => out.push(single(Tok::Comma)),
                '=' => out.push(single(Tok::Equals)),
                c if is_word_char(c) => {
                    let start = i;
                    while i < chars.len() && is_word_char(chars[i]) {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    let tok = if word.bytes().all(|b| b.is_ascii_digit()) {
                        Tok::Int(word.parse().map_err(|_| syntax(line, column, "integer too large"))?)
                    } else {
                        Tok::Word(word)
                    };
                    out.push(Token { tok, line, column });
                    continue;
                }
                other => return Err(syntax(line, column, &format!("unexpected character `{other}`"))),
            }
            i += 1;
        }
        if depth == 0 {
            out.push(Token {
                tok: Tok::Newline,
                line,
                column: chars.len() + 1,
            });
        }
    }
    if depth > 0 {
        let (line, column) = out.last().map_or((1, 1), |t| (t.line, t.column));
        return Err(syntax(line, column, "unclosed `[`"));
    }
    Ok(out)
}

fn syntax(line: usize, column: usize, msg: &str) -> SpecError {
    SpecError {
        line,
        column,
        kind: SpecErrorKind::Syntax(msg.to_string()),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.column))
    }

    fn error(&self, msg: &str) -> SpecError {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn word(&mut self, what: &str) -> Result<String, SpecError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.error(&format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SpecError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(&format!("expected `{kw}`"))),
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected a non-negative integer")),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), SpecError> {
        if self.peek().map(|t| &t.tok) == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn at(&self, tok: &Tok) -> bool {
        self.peek().map(|t| &t.tok) == Some(tok)
    }

    fn int_list(&mut self) -> Result<Vec<usize>, SpecError> {
        self.expect(Tok::Open, "`[`")?;
        let mut out = Vec::new();
        if self.at(&Tok::Close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.at(&Tok::Comma) {
                self.pos += 1;
            } else {
                self.expect(Tok::Close, "`,` or `]`")?;
                return Ok(out);
            }
        }
    }

    fn table(&mut self) -> Result<Vec<Vec<usize>>, SpecError> {
        self.expect(Tok::Open, "`[`")?;
        let mut rows = Vec::new();
        loop {
            rows.push(self.int_list()?);
            if self.at(&Tok::Comma) {
                self.pos += 1;
            } else {
                self.expect(Tok::Close, "`,` or `]`")?;
                return Ok(rows);
            }
        }
    }

    fn subgroup(&mut self) -> Result<SubgroupExpr, SpecError> {
        if self.at(&Tok::Open) {
            return Ok(SubgroupExpr::Generated(self.int_list()?));
        }
        let w = self.word("a subgroup expression")?;
        Ok(match w.as_str() {
            "normal" => SubgroupExpr::Normal(self.int_list()?),
            "socle" => SubgroupExpr::Socle,
            "trivial" => SubgroupExpr::Trivial,
            "whole" => SubgroupExpr::Whole,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected `[`, `normal`, `socle`, `trivial` or `whole`"));
            }
        })
    }

    fn group_expr(&mut self) -> Result<GroupExpr, SpecError> {
        let w = self.word("a group constructor")?;
        Ok(match w.as_str() {
            "klein4" => GroupExpr::Named(GroupKind::Klein4, 4),
            "table" => GroupExpr::Table(self.table()?),
            "product" => GroupExpr::Product(self.word("a group name")?, self.word("a group name")?),
            "quotient" => {
                let g = self.word("a group name")?;
                self.keyword("by")?;
                GroupExpr::Quotient(g, self.subgroup()?)
            }
            "inner" => GroupExpr::Inner(self.word("a group name")?),
            other => match GroupKind::from_str(other) {
                Ok(kind) => GroupExpr::Named(kind, self.int()?),
                Err(_) => {
                    self.pos -= 1;
                    return Err(self.error(&format!("unknown group constructor `{other}`")));
                }
            },
        })
    }

    fn operator_expr(&mut self) -> Result<OperatorExpr, SpecError> {
        if self.at(&Tok::Open) {
            return Ok(OperatorExpr::Explicit(self.int_list()?));
        }
        let w = self.word("an operator action")?;
        Ok(match w.as_str() {
            "identity" => OperatorExpr::Identity,
            "null" => OperatorExpr::Null,
            "inverse" => OperatorExpr::Inverse,
            "power" => OperatorExpr::Power(self.int()?),
            "conj" => OperatorExpr::Conj(self.int()?),
            other => {
                self.pos -= 1;
                return Err(self.error(&format!("unknown operator action `{other}`")));
            }
        })
    }

    fn statement(&mut self) -> Result<Located, SpecError> {
        let (line, column) = self.here();
        let head = self.word("`group` or `operator`")?;
        let statement = match head.as_str() {
            "group" => {
                let name = self.word("a group name")?;
                self.expect(Tok::Equals, "`=`")?;
                Statement::Group {
                    name,
                    expr: self.group_expr()?,
                }
            }
            "operator" => {
                let label = self.word("an operator label")?;
                self.keyword("on")?;
                let on = self.word("a group name")?;
                self.expect(Tok::Equals, "`=`")?;
                Statement::Operator {
                    label,
                    on,
                    action: self.operator_expr()?,
                }
            }
            _ => {
                self.pos -= 1;
                return Err(self.error("expected `group` or `operator`"));
            }
        };
        if !self.at(&Tok::Newline) {
            return Err(self.error("expected end of line"));
        }
        Ok(Located {
            statement,
            line,
            column,
        })
    }
}

/// Parses a description without elaborating it.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let tokens = lex(text)?;
    let eof = (text.lines().count().max(1), 1);
    let mut p = Parser { tokens, pos: 0, eof };
    let mut statements = Vec::new();
    while p.peek().is_some() {
        if p.at(&Tok::Newline) {
            p.next();
            continue;
        }
        statements.push(p.statement()?);
        p.next();
    }
    Ok(GroupSpec { statements })
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SubgroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupExpr::Generated(xs) => write!(f, "[{}]", join(xs)),
            SubgroupExpr::Normal(xs) => write!(f, "normal [{}]", join(xs)),
            SubgroupExpr::Socle => f.write_str("socle"),
            SubgroupExpr::Trivial => f.write_str("trivial"),
            SubgroupExpr::Whole => f.write_str("whole"),
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Named(GroupKind::Klein4, _) => f.write_str("klein4"),
            GroupExpr::Named(kind, n) => write!(f, "{kind} {n}"),
            GroupExpr::Table(rows) => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "table [{}]", rows.join(", "))
            }
            GroupExpr::Product(a, b) => write!(f, "product {a} {b}"),
            GroupExpr::Quotient(g, s) => write!(f, "quotient {g} by {s}"),
            GroupExpr::Inner(g) => write!(f, "inner {g}"),
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Explicit(xs) => write!(f, "[{}]", join(xs)),
            OperatorExpr::Identity => f.write_str("identity"),
            OperatorExpr::Null => f.write_str("null"),
            OperatorExpr::Inverse => f.write_str("inverse"),
            OperatorExpr::Power(k) => write!(f, "power {k}"),
            OperatorExpr::Conj(g) => write!(f, "conj {g}"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Group { name, expr } => write!(f, "group {name} = {expr}"),
            Statement::Operator { label, on, action } => write!(f, "operator {label} on {on} = {action}"),
        }
    }
}

/// Prints one statement per line; parsing the output gives back the same
/// statements.
impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.statement)?;
        }
        Ok(())
    }
}

/// Writes a group as an explicit table statement plus its operators.
pub fn group_to_spec(name: &str, group: &OmegaGroup) -> GroupSpec {
    let mut statements = vec![Statement::Group {
        name: name.to_string(),
        expr: GroupExpr::Table(group.rows()),
    }];
    statements.extend(group.operators().iter().map(|op| Statement::Operator {
        label: op.label.clone(),
        on: name.to_string(),
        action: OperatorExpr::Explicit(op.action.clone()),
    }));
    GroupSpec {
        statements: statements
            .into_iter()
            .enumerate()
            .map(|(i, statement)| Located {
                statement,
                line: i + 1,
                column: 1,
            })
            .collect(),
    }
}

/// Groups bound by a description, by name, plus the name touched by the
/// last statement.
#[derive(Debug, Clone)]
pub struct Elaborated {
    pub groups: BTreeMap<String, Arc<OmegaGroup>>,
    pub last: Option<String>,
}

impl Elaborated {
    pub fn get(&self, name: &str) -> Option<&Arc<OmegaGroup>> {
        self.groups.get(name)
    }

    pub fn target(&self) -> Option<&Arc<OmegaGroup>> {
        self.last.as_ref().and_then(|n| self.groups.get(n))
    }
}

fn check_elements(group: &OmegaGroup, xs: &[usize]) -> Result<(), Error> {
    match xs.iter().find(|&&x| x >= group.order()) {
        Some(x) => Err(Error::Precondition(format!(
            "element {x} out of range for a group of order {}",
            group.order()
        ))),
        None => Ok(()),
    }
}

fn subgroup_of(group: &OmegaGroup, expr: &SubgroupExpr, limits: &Limits) -> Result<Subgroup, Error> {
    Ok(match expr {
        SubgroupExpr::Generated(xs) => {
            check_elements(group, xs)?;
            generated_subgroup(group, xs)
        }
        SubgroupExpr::Normal(xs) => {
            check_elements(group, xs)?;
            normal_closure(group, xs)
        }
        SubgroupExpr::Socle => socle(group, limits)?,
        SubgroupExpr::Trivial => Subgroup::trivial(group.order()),
        SubgroupExpr::Whole => Subgroup::whole(group.order()),
    })
}

fn operator_action(group: &OmegaGroup, expr: &OperatorExpr) -> Result<Vec<usize>, Error> {
    let n = group.order();
    Ok(match expr {
        OperatorExpr::Explicit(xs) => xs.clone(),
        OperatorExpr::Identity => (0..n).collect(),
        OperatorExpr::Null => vec![0; n],
        OperatorExpr::Inverse => group.inverses().to_vec(),
        OperatorExpr::Power(k) => (0..n).map(|x| group.pow(x, *k)).collect(),
        OperatorExpr::Conj(g) => {
            check_elements(group, &[*g])?;
            (0..n).map(|x| group.conjugate(*g, x)).collect()
        }
    })
}

fn renamed(group: &OmegaGroup, name: &str) -> Arc<OmegaGroup> {
    Arc::new(group.clone().with_name(name))
}

/// Builds every group in the description, validating all axioms.
pub fn elaborate(spec: &GroupSpec, limits: &Limits) -> Result<Elaborated, SpecError> {
    let mut groups: BTreeMap<String, Arc<OmegaGroup>> = BTreeMap::new();
    let mut last = None;
    for located in &spec.statements {
        let fail = |kind| SpecError {
            line: located.line,
            column: located.column,
            kind,
        };
        let lookup = |name: &str| {
            groups
                .get(name)
                .cloned()
                .ok_or_else(|| fail(SpecErrorKind::UnknownGroup(name.to_string())))
        };
        let semantic = |e: Error| fail(SpecErrorKind::Semantic(e));
        match &located.statement {
            Statement::Group { name, expr } => {
                let group = match expr {
                    GroupExpr::Named(kind, n) => build_named(*kind, *n, limits).map_err(semantic)?,
                    GroupExpr::Table(rows) => {
                        let n = rows.len();
                        if n > limits.max_order {
                            return Err(semantic(Error::CapExceeded {
                                what: "table",
                                order: n,
                                cap: limits.max_order,
                            }));
                        }
                        OmegaGroup::from_table(rows.clone(), vec![]).map_err(semantic)?
                    }
                    GroupExpr::Product(a, b) => {
                        let (a, b) = (lookup(a)?, lookup(b)?);
                        let w = direct_product(&[a, b], limits).map_err(semantic)?;
                        (*w.product).clone()
                    }
                    GroupExpr::Quotient(g, s) => {
                        let g = lookup(g)?;
                        let h = subgroup_of(&g, s, limits).map_err(semantic)?;
                        let (q, _) = quotient(&g, &h).map_err(semantic)?;
                        (*q).clone()
                    }
                    GroupExpr::Inner(g) => with_inner_operators(&*lookup(g)?).map_err(semantic)?,
                };
                groups.insert(name.clone(), renamed(&group, name));
                last = Some(name.clone());
            }
            Statement::Operator { label, on, action } => {
                let g = lookup(on)?;
                let action = operator_action(&g, action).map_err(semantic)?;
                let extended = g
                    .with_operators([Operator::new(label.clone(), action)])
                    .map_err(semantic)?;
                groups.insert(on.clone(), renamed(&extended, on));
                last = Some(on.clone());
            }
        }
    }
    Ok(Elaborated { groups, last })
}

/// Parses and elaborates in one step.
pub fn load(text: &str, limits: &Limits) -> Result<Elaborated, SpecError> {
    elaborate(&parse_spec(text)?, limits)
}
