//! Move scripts: a small language for front cobordisms.
//!
//! ```text
//! start K tb=-1 r=0
//! R1 K
//! Birth U
//! Saddle K U -> K2(tb=-1,r=0)
//! end K2 tb=-1 r=0
//! ```
//!
//! A script declares its boundary (`start`/`end` lines with mandatory tb and
//! r attributes), then a move per line. Reidemeister moves R1, R1', R2, R2',
//! R3 take one live component; `Saddle A B -> C` merges, `Saddle A -> B C`
//! splits, `Birth N` creates a tb=-1, r=0 unknot unless attributes override.
//! Parsing replays the whole ledger: every operand must be alive when used,
//! names may not be reused while alive, and the end lines must list exactly
//! the components alive after the last move. Blank lines and `#` comments
//! are skipped.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: unknown move {token:?}")]
    UnknownMove { line: usize, col: usize, token: String },
    #[error("line {line}: component {name:?} is not alive here")]
    UndeclaredComponent { line: usize, name: String },
    #[error("line {line}: {detail}")]
    EndMismatch { line: usize, detail: String },
    #[error("concordance check requires exactly one start and one end component; found {starts} and {ends}")]
    MultiEnd { starts: usize, ends: usize },
    #[error("scripts do not compose: {detail}")]
    EndpointMismatch { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDecl {
    pub name: String,
    pub tb: i64,
    pub r: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    R1,
    R1Prime,
    R2,
    R2Prime,
    R3,
    SaddleMerge,
    SaddleSplit,
    Birth,
}

impl MoveKind {
    fn token(self) -> &'static str {
        match self {
            MoveKind::R1 => "R1",
            MoveKind::R1Prime => "R1'",
            MoveKind::R2 => "R2",
            MoveKind::R2Prime => "R2'",
            MoveKind::R3 => "R3",
            MoveKind::SaddleMerge | MoveKind::SaddleSplit => "Saddle",
            MoveKind::Birth => "Birth",
        }
    }
}

/// One move line. `inputs` are consumed components, `outputs` created ones;
/// Reidemeister moves keep their single operand in `inputs` and create
/// nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub inputs: Vec<String>,
    pub outputs: Vec<OutputDecl>,
    pub line: usize,
}

/// A component produced by a move; attributes are optional at the source
/// level (births default to tb=-1, r=0; saddle outputs may be bare).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputDecl {
    pub name: String,
    pub tb: Option<i64>,
    pub r: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    pub start: Vec<ComponentDecl>,
    pub moves: Vec<Move>,
    pub end: Vec<ComponentDecl>,
}

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut toks = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                toks.push(Tok { text: &line[s..i], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        toks.push(Tok { text: &line[s..], col: s + 1 });
    }
    toks
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ScriptError {
    ScriptError::SyntaxError { line, col, msg: msg.into() }
}

/// `tb=-1` / `r=0` attribute token.
fn parse_attr(tok: &Tok, line: usize) -> Result<(&'static str, i64), ScriptError> {
    let (key, rest) = tok
        .text
        .split_once('=')
        .ok_or_else(|| syntax(line, tok.col, format!("expected key=value, found {:?}", tok.text)))?;
    let key = match key {
        "tb" => "tb",
        "r" => "r",
        other => return Err(syntax(line, tok.col, format!("unknown attribute {other:?}"))),
    };
    let value = rest
        .parse()
        .map_err(|_| syntax(line, tok.col, format!("expected an integer after {key}=")))?;
    Ok((key, value))
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
}

fn parse_name(tok: &Tok, line: usize) -> Result<String, ScriptError> {
    if valid_name(tok.text) {
        Ok(tok.text.to_string())
    } else {
        Err(syntax(line, tok.col, format!("expected a component name, found {:?}", tok.text)))
    }
}

/// Saddle output: `NAME` or `NAME(tb=-1,r=0)`.
fn parse_output(tok: &Tok, line: usize) -> Result<OutputDecl, ScriptError> {
    match tok.text.split_once('(') {
        None => Ok(OutputDecl { name: parse_name(tok, line)?, tb: None, r: None }),
        Some((name, rest)) => {
            if !valid_name(name) {
                return Err(syntax(line, tok.col, format!("bad component name {name:?}")));
            }
            let Some(body) = rest.strip_suffix(')') else {
                return Err(syntax(line, tok.col, "missing closing parenthesis"));
            };
            let mut tb = None;
            let mut r = None;
            for part in body.split(',') {
                let fake = Tok { text: part, col: tok.col };
                match parse_attr(&fake, line)? {
                    ("tb", v) => tb = Some(v),
                    (_, v) => r = Some(v),
                }
            }
            Ok(OutputDecl { name: name.to_string(), tb, r })
        }
    }
}

fn parse_boundary_line(
    toks: &[Tok],
    line: usize,
    keyword: &str,
) -> Result<ComponentDecl, ScriptError> {
    if toks.len() != 4 {
        let col = toks.last().map_or(1, |t| t.col);
        return Err(syntax(line, col, format!("{keyword} takes: {keyword} NAME tb=I r=I")));
    }
    let name = parse_name(&toks[1], line)?;
    let (mut tb, mut r) = (None, None);
    for tok in &toks[2..4] {
        match parse_attr(tok, line)? {
            ("tb", v) => tb = Some(v),
            (_, v) => r = Some(v),
        }
    }
    let (Some(tb), Some(r)) = (tb, r) else {
        return Err(syntax(line, toks[2].col, format!("{keyword} needs both tb= and r=")));
    };
    Ok(ComponentDecl { name, tb, r })
}

/// Alive-set replay used both while parsing and by the public checks.
struct Replay {
    alive: BTreeMap<String, (Option<i64>, Option<i64>)>,
}

impl Replay {
    fn new(start: &[ComponentDecl]) -> Self {
        let alive = start
            .iter()
            .map(|c| (c.name.clone(), (Some(c.tb), Some(c.r))))
            .collect();
        Replay { alive }
    }

    fn consume(&mut self, name: &str, line: usize) -> Result<(), ScriptError> {
        if self.alive.remove(name).is_none() {
            return Err(ScriptError::UndeclaredComponent { line, name: name.to_string() });
        }
        Ok(())
    }

    fn touch(&self, name: &str, line: usize) -> Result<(), ScriptError> {
        if !self.alive.contains_key(name) {
            return Err(ScriptError::UndeclaredComponent { line, name: name.to_string() });
        }
        Ok(())
    }

    fn create(&mut self, out: &OutputDecl, line: usize) -> Result<(), ScriptError> {
        if self.alive.contains_key(&out.name) {
            return Err(syntax(line, 1, format!("component {:?} is already alive", out.name)));
        }
        self.alive.insert(out.name.clone(), (out.tb, out.r));
        Ok(())
    }

    fn apply(&mut self, mv: &Move) -> Result<(), ScriptError> {
        match mv.kind {
            MoveKind::R1 | MoveKind::R1Prime | MoveKind::R2 | MoveKind::R2Prime | MoveKind::R3 => {
                self.touch(&mv.inputs[0], mv.line)
            }
            MoveKind::SaddleMerge | MoveKind::SaddleSplit | MoveKind::Birth => {
                for name in &mv.inputs {
                    self.consume(name, mv.line)?;
                }
                for out in &mv.outputs {
                    self.create(out, mv.line)?;
                }
                Ok(())
            }
        }
    }
}

pub fn parse_script(input: &str) -> Result<MoveScript, ScriptError> {
    let mut start = Vec::new();
    let mut moves: Vec<Move> = Vec::new();
    let mut end = Vec::new();
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Phase {
        Start,
        Moves,
        End,
    }
    let mut phase = Phase::Start;
    for (li, raw) in input.lines().enumerate() {
        let line = li + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "start" => {
                if phase > Phase::Start {
                    return Err(syntax(line, head.col, "start lines must come first"));
                }
                start.push(parse_boundary_line(&toks, line, "start")?);
            }
            "end" => {
                phase = Phase::End;
                end.push(parse_boundary_line(&toks, line, "end")?);
            }
            "R1" | "R1'" | "R2" | "R2'" | "R3" => {
                if phase == Phase::End {
                    return Err(syntax(line, head.col, "moves cannot follow end lines"));
                }
                phase = Phase::Moves;
                if toks.len() != 2 {
                    return Err(syntax(line, head.col, format!("{} takes one component", head.text)));
                }
                let kind = match head.text {
                    "R1" => MoveKind::R1,
                    "R1'" => MoveKind::R1Prime,
                    "R2" => MoveKind::R2,
                    "R2'" => MoveKind::R2Prime,
                    _ => MoveKind::R3,
                };
                moves.push(Move {
                    kind,
                    inputs: vec![parse_name(&toks[1], line)?],
                    outputs: Vec::new(),
                    line,
                });
            }
            "Saddle" => {
                if phase == Phase::End {
                    return Err(syntax(line, head.col, "moves cannot follow end lines"));
                }
                phase = Phase::Moves;
                let arrow = toks.iter().position(|t| t.text == "->").ok_or_else(|| {
                    syntax(line, head.col, "Saddle needs '->' between inputs and outputs")
                })?;
                let ins = &toks[1..arrow];
                let outs = &toks[arrow + 1..];
                let kind = match (ins.len(), outs.len()) {
                    (2, 1) => MoveKind::SaddleMerge,
                    (1, 2) => MoveKind::SaddleSplit,
                    _ => {
                        return Err(syntax(
                            line,
                            head.col,
                            "Saddle is 'Saddle A B -> C' or 'Saddle A -> B C'",
                        ))
                    }
                };
                let inputs =
                    ins.iter().map(|t| parse_name(t, line)).collect::<Result<Vec<_>, _>>()?;
                if kind == MoveKind::SaddleMerge && inputs[0] == inputs[1] {
                    return Err(syntax(line, ins[1].col, "saddle inputs must be distinct"));
                }
                let outputs =
                    outs.iter().map(|t| parse_output(t, line)).collect::<Result<Vec<_>, _>>()?;
                moves.push(Move { kind, inputs, outputs, line });
            }
            "Birth" => {
                if phase == Phase::End {
                    return Err(syntax(line, head.col, "moves cannot follow end lines"));
                }
                phase = Phase::Moves;
                if toks.len() != 2 && toks.len() != 4 {
                    return Err(syntax(line, head.col, "Birth takes: Birth NAME [tb=I r=I]"));
                }
                let name = parse_name(&toks[1], line)?;
                let (mut tb, mut r) = (-1i64, 0i64);
                for tok in &toks[2..] {
                    match parse_attr(tok, line)? {
                        ("tb", v) => tb = v,
                        (_, v) => r = v,
                    }
                }
                moves.push(Move {
                    kind: MoveKind::Birth,
                    inputs: Vec::new(),
                    outputs: vec![OutputDecl { name, tb: Some(tb), r: Some(r) }],
                    line,
                });
            }
            other if other.starts_with(|c: char| c.is_ascii_uppercase()) && toks.len() >= 2 => {
                return Err(ScriptError::UnknownMove {
                    line,
                    col: head.col,
                    token: other.to_string(),
                });
            }
            other => {
                return Err(syntax(line, head.col, format!("unrecognized line start {other:?}")));
            }
        }
    }
    if start.is_empty() {
        return Err(syntax(1, 1, "script has no start line"));
    }
    if end.is_empty() {
        let line = input.lines().count();
        return Err(syntax(line.max(1), 1, "script has no end line"));
    }
    let script = MoveScript { start, moves, end };
    replay_and_check_end(&script)?;
    Ok(script)
}

/// Replays every move, then checks the end lines against the final alive
/// set: exact same names, and declared tb/r agreeing with any value the
/// ledger knows.
fn replay_and_check_end(script: &MoveScript) -> Result<(), ScriptError> {
    // Start names must be distinct.
    for (i, c) in script.start.iter().enumerate() {
        if script.start[..i].iter().any(|d| d.name == c.name) {
            return Err(ScriptError::EndMismatch {
                line: 1,
                detail: format!("start declares {:?} twice", c.name),
            });
        }
    }
    let mut replay = Replay::new(&script.start);
    for mv in &script.moves {
        replay.apply(mv)?;
    }
    let end_line = script.moves.last().map_or(1, |m| m.line) + 1;
    for decl in &script.end {
        let Some(&(tb, r)) = replay.alive.get(&decl.name) else {
            return Err(ScriptError::EndMismatch {
                line: end_line,
                detail: format!("end declares {:?}, which is not alive", decl.name),
            });
        };
        if let Some(tb) = tb {
            if tb != decl.tb {
                return Err(ScriptError::EndMismatch {
                    line: end_line,
                    detail: format!(
                        "end declares {:?} with tb={}, ledger has tb={}",
                        decl.name, decl.tb, tb
                    ),
                });
            }
        }
        if let Some(r) = r {
            if r != decl.r {
                return Err(ScriptError::EndMismatch {
                    line: end_line,
                    detail: format!(
                        "end declares {:?} with r={}, ledger has r={}",
                        decl.name, decl.r, r
                    ),
                });
            }
        }
    }
    let undeclared: Vec<&String> = replay
        .alive
        .keys()
        .filter(|name| !script.end.iter().any(|d| &d.name == *name))
        .collect();
    if !undeclared.is_empty() {
        return Err(ScriptError::EndMismatch {
            line: end_line,
            detail: format!("components alive but not declared at end: {undeclared:?}"),
        });
    }
    // Duplicate end names.
    for (i, c) in script.end.iter().enumerate() {
        if script.end[..i].iter().any(|d| d.name == c.name) {
            return Err(ScriptError::EndMismatch {
                line: end_line,
                detail: format!("end declares {:?} twice", c.name),
            });
        }
    }
    Ok(())
}

impl MoveScript {
    /// Births minus saddles: the Euler characteristic of the cobordism
    /// relative to its boundary.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for mv in &self.moves {
            match mv.kind {
                MoveKind::Birth => chi += 1,
                MoveKind::SaddleMerge | MoveKind::SaddleSplit => chi -= 1,
                _ => {}
            }
        }
        chi
    }

    pub fn saddle_count(&self) -> usize {
        self.moves
            .iter()
            .filter(|m| matches!(m.kind, MoveKind::SaddleMerge | MoveKind::SaddleSplit))
            .count()
    }

    pub fn birth_count(&self) -> usize {
        self.moves.iter().filter(|m| m.kind == MoveKind::Birth).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcordanceReport {
    pub pass: bool,
    pub euler_characteristic: i64,
    pub start: ComponentDecl,
    pub end: ComponentDecl,
    pub failures: Vec<String>,
}

/// A concordance is a single-start, single-end script of Euler
/// characteristic zero whose boundary data match.
pub fn check_concordance(script: &MoveScript) -> Result<ConcordanceReport, ScriptError> {
    if script.start.len() != 1 || script.end.len() != 1 {
        return Err(ScriptError::MultiEnd {
            starts: script.start.len(),
            ends: script.end.len(),
        });
    }
    let start = script.start[0].clone();
    let end = script.end[0].clone();
    let chi = script.euler_characteristic();
    let mut failures = Vec::new();
    if chi != 0 {
        failures.push(format!("euler characteristic is {chi}, a concordance has 0"));
    }
    if start.tb != end.tb {
        failures.push(format!(
            "tb changes across the cobordism: {} at start, {} at end; \
             a Lagrangian concordance preserves tb",
            start.tb, end.tb
        ));
    }
    if start.r != end.r {
        failures.push(format!(
            "r changes across the cobordism: {} at start, {} at end; \
             a Lagrangian concordance preserves r",
            start.r, end.r
        ));
    }
    Ok(ConcordanceReport { pass: failures.is_empty(), euler_characteristic: chi, start, end, failures })
}

/// Concatenate two scripts when the first ends exactly where the second
/// starts (same names with the same tb and r).
pub fn compose(a: &MoveScript, b: &MoveScript) -> Result<MoveScript, ScriptError> {
    let mut a_end = a.end.clone();
    let mut b_start = b.start.clone();
    a_end.sort_by(|x, y| x.name.cmp(&y.name));
    b_start.sort_by(|x, y| x.name.cmp(&y.name));
    if a_end != b_start {
        return Err(ScriptError::EndpointMismatch {
            detail: format!(
                "first script ends with {:?}, second starts with {:?}",
                a_end.iter().map(decl_str).collect::<Vec<_>>(),
                b_start.iter().map(decl_str).collect::<Vec<_>>()
            ),
        });
    }
    let script = MoveScript {
        start: a.start.clone(),
        moves: a.moves.iter().chain(&b.moves).cloned().collect(),
        end: b.end.clone(),
    };
    replay_and_check_end(&script)?;
    Ok(script)
}

fn decl_str(d: &ComponentDecl) -> String {
    format!("{} tb={} r={}", d.name, d.tb, d.r)
}

impl fmt::Display for MoveScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.start {
            writeln!(f, "start {} tb={} r={}", d.name, d.tb, d.r)?;
        }
        for mv in &self.moves {
            match mv.kind {
                MoveKind::Birth => {
                    let out = &mv.outputs[0];
                    writeln!(
                        f,
                        "Birth {} tb={} r={}",
                        out.name,
                        out.tb.unwrap_or(-1),
                        out.r.unwrap_or(0)
                    )?;
                }
                MoveKind::SaddleMerge | MoveKind::SaddleSplit => {
                    let outs: Vec<String> = mv
                        .outputs
                        .iter()
                        .map(|o| match (o.tb, o.r) {
                            (Some(tb), Some(r)) => format!("{}(tb={},r={})", o.name, tb, r),
                            _ => o.name.clone(),
                        })
                        .collect();
                    writeln!(f, "Saddle {} -> {}", mv.inputs.join(" "), outs.join(" "))?;
                }
                _ => writeln!(f, "{} {}", mv.kind.token(), mv.inputs[0])?,
            }
        }
        for d in &self.end {
            writeln!(f, "end {} tb={} r={}", d.name, d.tb, d.r)?;
        }
        Ok(())
    }
}
