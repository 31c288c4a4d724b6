//! Text documents for configurations and schedules, and the well-order code.
//!
//! Both documents are line oriented. Blank lines and `#` comments are
//! ignored. A configuration document:
//!
//! ```text
//! tcube-config 1
//! variant odd edgeless
//! class mod 2 res 1 include  exclude
//! class mod 2 res 0 include  exclude
//! entry k0 zero gt RRRROOOOBBBBGGGGWWWWYYYY
//! center ROBGWY
//! end
//! ```
//!
//! A schedule document is a list of segments, each closed by `end`:
//!
//! ```text
//! tcube-schedule 1
//! stages
//! stage
//! single x +2 1
//! par z+3 mod 2 res 1 include  exclude
//! end
//! power 3
//! stages
//! stage
//! single y +inf 1
//! end
//! end
//! repeat
//! single x +1 1
//! end
//! family
//! set mod 1 res 0 include  exclude 1
//! template mod 1 res 0 include  exclude
//! single y +inf 3
//! atstage x+3
//! above z-1 0
//! quiesce 0 1
//! end
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::config::{
    apply_finite_sequence, solved_config, ClusterColoring, Color, ConfigError, Coord, Key,
    PresentedConfiguration, Rel,
};
use crate::geometry::{
    locate, Axis, BasicTwist, Cell, CubeVariant, Edges, ExtIndex, Parity,
};
use crate::moves::SliceType;
use crate::periodic::PeriodicSet;
use crate::schedule::{
    Quiescence, Schedule, ScheduleError, ScheduleItem, Segment, Stage, StageFamily, StageTemplate,
    TemplateItem,
};

pub const CONFIG_HEADER: &str = "tcube-config";
pub const SCHEDULE_HEADER: &str = "tcube-schedule";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: String, expected: u32 },
    #[error("index {0} occurs twice")]
    DuplicateIndex(u64),
    #[error("index 0 is not a positive integer")]
    ZeroIndex,
    #[error("not an order code: {0}")]
    NotAnOrderCode(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

// ---------------------------------------------------------------- emitting

fn emit_coord(c: Coord) -> String {
    match c {
        Coord::Zero => "zero".into(),
        Coord::Inf => "inf".into(),
        Coord::Class(i) => format!("k{i}"),
    }
}

fn emit_rel(r: Rel) -> &'static str {
    match r {
        Rel::Lt => "lt",
        Rel::Eq => "eq",
        Rel::Gt => "gt",
    }
}

pub fn emit_config(cfg: &PresentedConfiguration) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CONFIG_HEADER} {FORMAT_VERSION}");
    let _ = writeln!(out, "variant {}", cfg.variant);
    for c in cfg.classes() {
        let _ = writeln!(out, "class {c}");
    }
    for (k, col) in cfg.table() {
        let _ = writeln!(
            out,
            "entry {} {} {} {}",
            emit_coord(k.x),
            emit_coord(k.y),
            emit_rel(k.rel),
            col.letters()
        );
    }
    if let Some(c) = cfg.center() {
        let _ = writeln!(out, "center {}", c.letters());
    }
    out.push_str("end\n");
    out
}

fn emit_twist(t: BasicTwist) -> String {
    format!("{} {} {}", t.axis.letter(), t.layer, t.exponent)
}

fn emit_item(out: &mut String, it: &ScheduleItem) {
    let _ = match it {
        ScheduleItem::Single(t) => writeln!(out, "single {}", emit_twist(*t)),
        ScheduleItem::ParallelSlice(ty, set) => writeln!(out, "par {ty} {set}"),
    };
}

fn emit_segments(out: &mut String, segs: &[Segment]) {
    for seg in segs {
        match seg {
            Segment::Stages(stages) => {
                out.push_str("stages\n");
                for st in stages {
                    out.push_str("stage\n");
                    for it in st {
                        emit_item(out, it);
                    }
                }
            }
            Segment::Power(inner, k) => {
                let _ = writeln!(out, "power {k}");
                emit_segments(out, inner.segments());
            }
            Segment::Repeat(block) => {
                out.push_str("repeat\n");
                for it in block {
                    emit_item(out, it);
                }
            }
            Segment::Family(f) => {
                out.push_str("family\n");
                for s in f.sets() {
                    let _ = writeln!(out, "set {s}");
                }
                for t in f.templates() {
                    let _ = writeln!(out, "template {}", t.selector);
                    for it in &t.items {
                        let _ = match it {
                            TemplateItem::Single(tw) => writeln!(out, "single {}", emit_twist(*tw)),
                            TemplateItem::AtStage(ty) => writeln!(out, "atstage {ty}"),
                            TemplateItem::Above(ty, i) => writeln!(out, "above {ty} {i}"),
                        };
                    }
                }
                if let Some(q) = f.quiescence() {
                    let _ = writeln!(out, "quiesce {} {}", q.center, q.rep_offset);
                }
            }
        }
        out.push_str("end\n");
    }
}

pub fn emit_schedule(s: &Schedule) -> String {
    let mut out = format!("{SCHEDULE_HEADER} {FORMAT_VERSION}\n");
    emit_segments(&mut out, s.segments());
    out
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

fn tokenize(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    toks.push(Tok {
                        line: i + 1,
                        col: body[..s].chars().count() + 1,
                        text: &body[s..j],
                    });
                    start = None;
                }
                (false, None) => start = Some(j),
                _ => {}
            }
        }
        if !toks.is_empty() {
            out.push(Line { no: i + 1, toks });
        }
    }
    out
}

fn err_at(t: Tok<'_>, msg: impl Into<String>) -> CodecError {
    CodecError::Parse {
        line: t.line,
        col: t.col,
        msg: msg.into(),
    }
}

struct Lines<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(src: &'a str) -> Lines<'a> {
        let lines = tokenize(src);
        Lines {
            last_line: src.lines().count().max(1),
            lines,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Result<&Line<'a>, CodecError> {
        let eof = CodecError::Parse {
            line: self.last_line,
            col: 1,
            msg: "unexpected end of document".into(),
        };
        let l = self.lines.get(self.pos).ok_or(eof)?;
        self.pos += 1;
        Ok(l)
    }
}

/// Cursor over the tokens of one line.
struct Args<'a, 'b> {
    line: &'b Line<'a>,
    i: usize,
}

impl<'a> Args<'a, '_> {
    fn new<'b>(line: &'b Line<'a>) -> Args<'a, 'b> {
        Args { line, i: 1 }
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.line.toks.get(self.i).copied()
    }

    fn next(&mut self, what: &str) -> Result<Tok<'a>, CodecError> {
        match self.line.toks.get(self.i) {
            Some(&t) => {
                self.i += 1;
                Ok(t)
            }
            None => {
                let last = self.line.toks[self.line.toks.len() - 1];
                Err(CodecError::Parse {
                    line: self.line.no,
                    col: last.col + last.text.chars().count(),
                    msg: format!("expected {what}"),
                })
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), CodecError> {
        let t = self.next(kw)?;
        if t.text != kw {
            return Err(err_at(t, format!("expected `{kw}`, found `{}`", t.text)));
        }
        Ok(())
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, CodecError> {
        let t = self.next(what)?;
        t.text
            .parse()
            .map_err(|_| err_at(t, format!("expected {what}, found `{}`", t.text)))
    }

    fn finish(&self) -> Result<(), CodecError> {
        match self.peek() {
            Some(t) => Err(err_at(t, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

const SET_KEYWORDS: [&str; 4] = ["mod", "res", "include", "exclude"];

fn parse_list(args: &mut Args<'_, '_>) -> Result<Vec<u64>, CodecError> {
    match args.peek() {
        Some(t) if !SET_KEYWORDS.contains(&t.text) => {
            args.i += 1;
            t.text
                .split(',')
                .map(|p| {
                    p.parse::<u64>()
                        .map_err(|_| err_at(t, format!("bad number `{p}` in list")))
                })
                .collect()
        }
        _ => Ok(Vec::new()),
    }
}

fn parse_set(args: &mut Args<'_, '_>) -> Result<PeriodicSet, CodecError> {
    args.keyword("mod")?;
    let t = args.peek();
    let m: u64 = args.number("modulus")?;
    if m == 0 {
        return Err(err_at(t.expect("just parsed"), "modulus must be positive"));
    }
    args.keyword("res")?;
    let res = parse_list(args)?;
    args.keyword("include")?;
    let inc = parse_list(args)?;
    args.keyword("exclude")?;
    let exc = parse_list(args)?;
    Ok(PeriodicSet::new(m, res, inc, exc))
}

fn parse_header(lines: &mut Lines<'_>, header: &str) -> Result<(), CodecError> {
    let l = lines.next()?;
    let t = l.toks[0];
    if t.text != header {
        return Err(err_at(t, format!("expected `{header}` header")));
    }
    let mut a = Args::new(l);
    let v = a.next("format version")?;
    if v.text != FORMAT_VERSION.to_string() {
        return Err(CodecError::VersionMismatch {
            found: v.text.to_string(),
            expected: FORMAT_VERSION,
        });
    }
    a.finish()
}

fn parse_coord(t: Tok<'_>, nclasses: usize) -> Result<Coord, CodecError> {
    match t.text {
        "zero" => Ok(Coord::Zero),
        "inf" => Ok(Coord::Inf),
        s => s
            .strip_prefix('k')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&i| i < nclasses)
            .map(Coord::Class)
            .ok_or_else(|| err_at(t, format!("bad class coordinate `{s}`"))),
    }
}

fn parse_coloring(t: Tok<'_>, len: usize) -> Result<ClusterColoring, CodecError> {
    if t.text.chars().count() != len {
        return Err(err_at(
            t,
            format!("color string has {} letters, expected {len}", t.text.chars().count()),
        ));
    }
    ClusterColoring::from_letters(t.text).ok_or_else(|| err_at(t, "unknown color letter"))
}

pub fn parse_config(src: &str) -> Result<PresentedConfiguration, CodecError> {
    let mut lines = Lines::new(src);
    parse_header(&mut lines, CONFIG_HEADER)?;
    let l = lines.next()?;
    let mut a = Args::new(l);
    if l.toks[0].text != "variant" {
        return Err(err_at(l.toks[0], "expected `variant`"));
    }
    let pt = a.next("parity")?;
    let parity = match pt.text {
        "odd" => Parity::Odd,
        "even" => Parity::Even,
        s => return Err(err_at(pt, format!("unknown parity `{s}`"))),
    };
    let et = a.next("edges")?;
    let edges = match et.text {
        "edged" => Edges::Edged,
        "edgeless" => Edges::Edgeless,
        s => return Err(err_at(et, format!("unknown edge kind `{s}`"))),
    };
    a.finish()?;
    let variant = CubeVariant { parity, edges };

    let mut classes = Vec::new();
    let mut table = BTreeMap::new();
    let mut center = None;
    loop {
        let l = lines.next()?;
        let kw = l.toks[0];
        let mut a = Args::new(l);
        match kw.text {
            "class" if table.is_empty() && center.is_none() => {
                classes.push(parse_set(&mut a)?);
            }
            "entry" if center.is_none() => {
                let x = parse_coord(a.next("coordinate")?, classes.len())?;
                let y = parse_coord(a.next("coordinate")?, classes.len())?;
                let rt = a.next("relation")?;
                let rel = match rt.text {
                    "lt" => Rel::Lt,
                    "eq" => Rel::Eq,
                    "gt" => Rel::Gt,
                    s => return Err(err_at(rt, format!("unknown relation `{s}`"))),
                };
                let key = Key { x, y, rel };
                let col = parse_coloring(a.next("color string")?, 24)?;
                if table.insert(key, col).is_some() {
                    return Err(err_at(kw, format!("duplicate entry {key}")));
                }
            }
            "center" if center.is_none() => {
                center = Some(parse_coloring(a.next("color string")?, 6)?);
            }
            "end" => {
                a.finish()?;
                break;
            }
            s => return Err(err_at(kw, format!("unexpected `{s}`"))),
        }
        a.finish()?;
    }
    if let Some(l) = lines.peek() {
        return Err(err_at(l.toks[0], "content after `end`"));
    }
    Ok(PresentedConfiguration::from_parts(variant, classes, table, center)?)
}

fn parse_axis(t: Tok<'_>, c: char) -> Result<Axis, CodecError> {
    match c {
        'x' => Ok(Axis::X),
        'y' => Ok(Axis::Y),
        'z' => Ok(Axis::Z),
        _ => Err(err_at(t, format!("unknown axis `{c}`"))),
    }
}

fn parse_exponent(t: Tok<'_>, s: &str) -> Result<u8, CodecError> {
    match s.parse::<u8>() {
        Ok(e @ 1..=3) => Ok(e),
        _ => Err(err_at(t, format!("exponent must be 1, 2 or 3, found `{s}`"))),
    }
}

fn parse_twist(a: &mut Args<'_, '_>) -> Result<BasicTwist, CodecError> {
    let at = a.next("axis")?;
    let mut cs = at.text.chars();
    let axis = match (cs.next(), cs.next()) {
        (Some(c), None) => parse_axis(at, c)?,
        _ => return Err(err_at(at, format!("unknown axis `{}`", at.text))),
    };
    let lt = a.next("layer")?;
    let layer = match lt.text {
        "+inf" => ExtIndex::PosInf,
        "-inf" => ExtIndex::NegInf,
        "0" => ExtIndex::Zero,
        s => {
            let (sign, digits) = s.split_at(s.len().min(1));
            match (sign, digits.parse::<u64>()) {
                ("+", Ok(n)) if n > 0 => ExtIndex::Pos(n),
                ("-", Ok(n)) if n > 0 => ExtIndex::Neg(n),
                _ => return Err(err_at(lt, format!("bad layer `{s}`"))),
            }
        }
    };
    let et = a.next("exponent")?;
    let exponent = parse_exponent(et, et.text)?;
    Ok(BasicTwist::new(axis, layer, exponent))
}

fn parse_slice_type(t: Tok<'_>) -> Result<SliceType, CodecError> {
    let cs: Vec<char> = t.text.chars().collect();
    if cs.len() != 3 {
        return Err(err_at(t, format!("bad slice type `{}`", t.text)));
    }
    let axis = parse_axis(t, cs[0])?;
    let sign = match cs[1] {
        '+' => 1,
        '-' => -1,
        _ => return Err(err_at(t, format!("bad slice type `{}`", t.text))),
    };
    let exponent = parse_exponent(t, &cs[2].to_string())?;
    Ok(SliceType::new(axis, sign, exponent))
}

fn parse_item(l: &Line<'_>) -> Result<Option<ScheduleItem>, CodecError> {
    let mut a = Args::new(l);
    let item = match l.toks[0].text {
        "single" => ScheduleItem::Single(parse_twist(&mut a)?),
        "par" => {
            let ty = parse_slice_type(a.next("slice type")?)?;
            ScheduleItem::parallel(ty, parse_set(&mut a)?)
        }
        _ => return Ok(None),
    };
    a.finish()?;
    Ok(Some(item))
}

fn parse_segments(lines: &mut Lines<'_>, nested: bool) -> Result<Vec<Segment>, CodecError> {
    let mut segs = Vec::new();
    loop {
        let Some(l) = lines.peek() else {
            if nested {
                lines.next()?;
            }
            return Ok(segs);
        };
        let kw = l.toks[0];
        if kw.text == "end" && nested {
            lines.next()?;
            return Ok(segs);
        }
        let l = lines.next()?;
        let mut a = Args::new(l);
        match kw.text {
            "stages" => {
                a.finish()?;
                let mut stages: Vec<Stage> = Vec::new();
                loop {
                    let l = lines.next()?;
                    match l.toks[0].text {
                        "end" => {
                            Args::new(l).finish()?;
                            break;
                        }
                        "stage" => {
                            Args::new(l).finish()?;
                            stages.push(Vec::new());
                        }
                        _ => {
                            let it = parse_item(l)?
                                .ok_or_else(|| err_at(l.toks[0], format!("unexpected `{}`", l.toks[0].text)))?;
                            stages
                                .last_mut()
                                .ok_or_else(|| err_at(l.toks[0], "item outside a stage"))?
                                .push(it);
                        }
                    }
                }
                segs.push(Segment::Stages(stages));
            }
            "power" => {
                let k: u64 = a.number("repetition count")?;
                a.finish()?;
                let inner = parse_segments(lines, true)?;
                let inner = Schedule::new(inner).map_err(|e| err_at(kw, e.to_string()))?;
                segs.push(Segment::Power(Box::new(inner), k));
            }
            "repeat" => {
                a.finish()?;
                let mut block = Vec::new();
                loop {
                    let l = lines.next()?;
                    if l.toks[0].text == "end" {
                        Args::new(l).finish()?;
                        break;
                    }
                    block.push(
                        parse_item(l)?
                            .ok_or_else(|| err_at(l.toks[0], format!("unexpected `{}`", l.toks[0].text)))?,
                    );
                }
                segs.push(Segment::Repeat(block));
            }
            "family" => {
                a.finish()?;
                segs.push(Segment::Family(parse_family(lines, kw)?));
            }
            s => return Err(err_at(kw, format!("unexpected `{s}`"))),
        }
    }
}

fn parse_family(lines: &mut Lines<'_>, at: Tok<'_>) -> Result<StageFamily, CodecError> {
    let mut sets = Vec::new();
    let mut templates: Vec<StageTemplate> = Vec::new();
    let mut quiescence = None;
    loop {
        let l = lines.next()?;
        let kw = l.toks[0];
        let mut a = Args::new(l);
        match kw.text {
            "set" if templates.is_empty() => sets.push(parse_set(&mut a)?),
            "template" if quiescence.is_none() => templates.push(StageTemplate {
                selector: parse_set(&mut a)?,
                items: Vec::new(),
            }),
            "single" | "atstage" | "above" if quiescence.is_none() => {
                let item = match kw.text {
                    "single" => TemplateItem::Single(parse_twist(&mut a)?),
                    "atstage" => TemplateItem::AtStage(parse_slice_type(a.next("slice type")?)?),
                    _ => {
                        let ty = parse_slice_type(a.next("slice type")?)?;
                        let t = a.peek();
                        let i: usize = a.number("set index")?;
                        if i >= sets.len() {
                            return Err(err_at(t.expect("just parsed"), format!("no set {i}")));
                        }
                        TemplateItem::Above(ty, i)
                    }
                };
                templates
                    .last_mut()
                    .ok_or_else(|| err_at(kw, "item outside a template"))?
                    .items
                    .push(item);
            }
            "quiesce" if quiescence.is_none() => {
                quiescence = Some(Quiescence {
                    center: a.number("center bound")?,
                    rep_offset: a.number("offset")?,
                });
            }
            "end" => {
                a.finish()?;
                break;
            }
            s => return Err(err_at(kw, format!("unexpected `{s}`"))),
        }
        a.finish()?;
    }
    StageFamily::new(sets, templates, quiescence).map_err(|e| err_at(at, e.to_string()))
}

pub fn parse_schedule(src: &str) -> Result<Schedule, CodecError> {
    let mut lines = Lines::new(src);
    parse_header(&mut lines, SCHEDULE_HEADER)?;
    let segs = parse_segments(&mut lines, false)?;
    Ok(Schedule::new(segs)?)
}

// ------------------------------------------------------------ well orders

/// A finite enumeration prefix of distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellOrderPrefix(Vec<u64>);

impl WellOrderPrefix {
    pub fn new(items: Vec<u64>) -> Result<WellOrderPrefix, CodecError> {
        let mut seen = BTreeSet::new();
        for &a in &items {
            if a == 0 {
                return Err(CodecError::ZeroIndex);
            }
            if !seen.insert(a) {
                return Err(CodecError::DuplicateIndex(a));
            }
        }
        Ok(WellOrderPrefix(items))
    }

    pub fn items(&self) -> &[u64] {
        &self.0
    }
}

/// `T_{x,+α}` then `T_{y,+α}` for each `α` in order.
pub fn well_order_twists(prefix: &WellOrderPrefix) -> Vec<BasicTwist> {
    prefix
        .0
        .iter()
        .flat_map(|&a| {
            [
                BasicTwist::new(Axis::X, ExtIndex::Pos(a), 1),
                BasicTwist::new(Axis::Y, ExtIndex::Pos(a), 1),
            ]
        })
        .collect()
}

pub fn encode_well_order(
    prefix: &WellOrderPrefix,
    variant: CubeVariant,
) -> Result<(Schedule, PresentedConfiguration), CodecError> {
    let twists = well_order_twists(prefix);
    let cfg = apply_finite_sequence(&solved_config(variant), &twists)?;
    Ok((Schedule::from_twists(&twists), cfg))
}

/// Color of the Front cell `(x, y, +∞)`.
pub fn front_color(cfg: &PresentedConfiguration, x: u64, y: u64) -> Result<Color, CodecError> {
    let cell = Cell::plain(ExtIndex::Pos(x), ExtIndex::Pos(y), ExtIndex::PosInf);
    let (id, slot) = locate(cell);
    Ok(cfg.cluster_coloring_at(id)?.0[slot.0 as usize])
}

/// Recovers the enumeration order of `indices`: `α` comes before `β` iff
/// the Front cell `(α, β)` is orange.
pub fn decode_well_order(cfg: &PresentedConfiguration, indices: &[u64]) -> Result<Vec<u64>, CodecError> {
    let idx: BTreeSet<u64> = indices.iter().copied().collect();
    if idx.len() != indices.len() {
        let dup = indices.iter().find(|a| indices.iter().filter(|b| b == a).count() > 1);
        return Err(CodecError::DuplicateIndex(*dup.expect("a repeated index")));
    }
    let mut earlier: BTreeMap<u64, usize> = BTreeMap::new();
    for &a in &idx {
        if a == 0 {
            return Err(CodecError::ZeroIndex);
        }
        if front_color(cfg, a, a)? != Color::Orange {
            return Err(CodecError::NotAnOrderCode(format!("diagonal cell ({a},{a}) is not orange")));
        }
        earlier.insert(a, 0);
    }
    for &a in &idx {
        for &b in idx.range(a + 1..) {
            let ab = front_color(cfg, a, b)?;
            let ba = front_color(cfg, b, a)?;
            let a_first = match (ab, ba) {
                (Color::Orange, Color::Blue) => true,
                (Color::Blue, Color::Orange) => false,
                _ => {
                    return Err(CodecError::NotAnOrderCode(format!(
                        "cells ({a},{b}) and ({b},{a}) are {ab:?} and {ba:?}"
                    )))
                }
            };
            *earlier.get_mut(if a_first { &b } else { &a }).expect("present") += 1;
        }
    }
    let mut out: Vec<(usize, u64)> = earlier.into_iter().map(|(a, k)| (k, a)).collect();
    out.sort_unstable();
    if out.iter().enumerate().any(|(i, &(k, _))| i != k) {
        return Err(CodecError::NotAnOrderCode("the coded relation is not transitive".into()));
    }
    Ok(out.into_iter().map(|(_, a)| a).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{superflip_config, SuperflipKind};
    use crate::geometry::Face;
    use crate::moves::FaceType;

    #[test]
    fn config_round_trips() {
        for v in CubeVariant::ALL {
            let cfg = solved_config(v);
            assert_eq!(parse_config(&emit_config(&cfg)).unwrap(), cfg);
        }
        let sf = superflip_config(SuperflipKind::Omega);
        assert_eq!(parse_config(&emit_config(&sf)).unwrap(), sf);
    }

    #[test]
    fn schedule_round_trips() {
        let inner = Schedule::from_twists(&[BasicTwist::new(Axis::Y, ExtIndex::PosInf, 1)]);
        let fam = StageFamily::new(
            vec![PeriodicSet::new(1, [0], [], [1])],
            vec![StageTemplate {
                selector: PeriodicSet::all(),
                items: vec![
                    TemplateItem::Single(FaceType::new(Face::Up, 3).twist()),
                    TemplateItem::AtStage(SliceType::new(Axis::X, 1, 3)),
                    TemplateItem::Above(SliceType::new(Axis::Z, -1, 1), 0),
                ],
            }],
            Some(Quiescence {
                center: 0,
                rep_offset: 1,
            }),
        )
        .unwrap();
        let s = Schedule::new(vec![
            Segment::Stages(vec![
                vec![
                    ScheduleItem::Single(BasicTwist::new(Axis::X, ExtIndex::Pos(2), 1)),
                    ScheduleItem::parallel(
                        SliceType::new(Axis::Z, 1, 3),
                        PeriodicSet::residue_class(2, 1),
                    ),
                ],
                vec![],
            ]),
            Segment::Power(Box::new(inner), 3),
            Segment::Family(fam),
        ])
        .unwrap();
        let text = emit_schedule(&s);
        assert_eq!(parse_schedule(&text).unwrap(), s, "{text}");
        let r = Schedule::new(vec![Segment::Repeat(vec![ScheduleItem::Single(BasicTwist::new(
            Axis::X,
            ExtIndex::Zero,
            2,
        ))])])
        .unwrap();
        assert_eq!(parse_schedule(&emit_schedule(&r)).unwrap(), r);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let text = emit_config(&solved_config(CubeVariant::ODD_EDGELESS));
        let truncated: String = text.lines().take(3).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_config(&truncated), Err(CodecError::Parse { .. })));
        let bumped = text.replacen("tcube-config 1", "tcube-config 2", 1);
        assert!(matches!(parse_config(&bumped), Err(CodecError::VersionMismatch { .. })));
        let bad = "tcube-schedule 1\nstages\nstage\nsingle q +1 1\nend\n";
        assert_eq!(
            parse_schedule(bad),
            Err(CodecError::Parse {
                line: 4,
                col: 8,
                msg: "unknown axis `q`".into()
            })
        );
        let short = text.replacen("RRRROOOOBBBBGGGGWWWWYYYY", "RRRROOOO", 1);
        assert!(matches!(parse_config(&short), Err(CodecError::Parse { .. })));
    }

    #[test]
    fn well_order_examples() {
        let p = WellOrderPrefix::new(vec![3, 1]).unwrap();
        let (_, cfg) = encode_well_order(&p, CubeVariant::ODD_EDGELESS).unwrap();
        assert_eq!(front_color(&cfg, 3, 1).unwrap(), Color::Orange);
        assert_eq!(front_color(&cfg, 1, 3).unwrap(), Color::Blue);
        assert_eq!(decode_well_order(&cfg, &[1, 3]).unwrap(), vec![3, 1]);
        assert_eq!(decode_well_order(&cfg, &[1]).unwrap(), vec![1]);
        let (_, empty) = encode_well_order(&WellOrderPrefix::new(vec![]).unwrap(), CubeVariant::ODD_EDGELESS).unwrap();
        assert_eq!(empty, solved_config(CubeVariant::ODD_EDGELESS));
        assert!(matches!(decode_well_order(&empty, &[2]), Err(CodecError::NotAnOrderCode(_))));
        assert_eq!(WellOrderPrefix::new(vec![2, 5, 2]), Err(CodecError::DuplicateIndex(2)));
    }
}
