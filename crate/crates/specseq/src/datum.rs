//! Text format for resolution data: parser, printer, diagnostics.
//!
//! A datum file is line-oriented with four kinds of sections:
//!
//! ```text
//! # comment
//! meta
//!   n = 2
//!   shape = contraction
//!   sigma = 1
//!
//! ring X
//!   basis one deg 0
//!   basis h deg 2 weight 2     # weight defaults to the degree
//!   product h h = 1 hh
//!
//! map j1 : X -> D1             # rows = target basis, cols = source basis
//!   row 1 0 0
//!   row 0 1 0
//!
//! map g1 : Q^1 -> D1           # formal source for point classes
//!   row 1
//!
//! diagram
//!   xtilde = X
//!   strata = D1 D2
//!   j1 = j1
//!   g1 = g1
//!   restriction 1 0 = d0       # (j_{2,0})*: H*(D^(1)) -> H*(D^(2))
//!   gysin 1 0 = gy10           # optional pushforwards
//! ```
//!
//! Product values are sums of `coefficient name` terms joined with `+`
//! (coefficients are exact rationals, always written), or the literal
//! `0`.  Rings in a datum carry the zero differential, so no `d` lines
//! exist.  Unknown keys are rejected; every name is defined exactly
//! once.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;

use crate::builders::ResolutionDatum;
use crate::cdga::{BasisElt, Cdga};
use crate::formality::Shape;
use crate::linalg::{Mat, SparseVec};
use crate::scalar::Q;

/// Which spectral sequence a datum feeds, and (for varieties) which
/// hypothesis family it claims.  Always explicit user input, never
/// inferred from the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatumKind {
    /// A projective variety datum under one of the four shape
    /// hypotheses.
    Variety(Shape),
    /// A plain normal-crossings divisor (no ambient variety role).
    Divisor,
    /// A smooth quasi-projective complement with Gysin data.
    Log,
}

impl DatumKind {
    pub fn parse(s: &str) -> Option<DatumKind> {
        match s {
            "divisor" => Some(DatumKind::Divisor),
            "log" => Some(DatumKind::Log),
            _ => Shape::parse(s).map(DatumKind::Variety),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DatumKind::Variety(s) => s.name(),
            DatumKind::Divisor => "divisor",
            DatumKind::Log => "log",
        }
    }
}

/// The structured content of a datum file.
#[derive(Debug, Clone)]
pub struct DatumFile {
    pub datum: ResolutionDatum,
    /// Spectral sequence selector and claimed hypothesis family.
    pub kind: DatumKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumError {
    /// Malformed text, with 1-based line and column.
    SyntaxError { line: usize, col: usize, msg: String },
    UndefinedName { line: usize, name: String },
    DuplicateDefinition { line: usize, name: String },
    /// Structurally well-formed but violating a datum invariant.
    DatumInvariantViolation(String),
}

impl std::fmt::Display for DatumError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DatumError::SyntaxError { line, col, msg } => {
                write!(f, "syntax error at {line}:{col}: {msg}")
            }
            DatumError::UndefinedName { line, name } => {
                write!(f, "line {line}: undefined name `{name}`")
            }
            DatumError::DuplicateDefinition { line, name } => {
                write!(f, "line {line}: `{name}` is defined more than once")
            }
            DatumError::DatumInvariantViolation(msg) => {
                write!(f, "datum invariant violated: {msg}")
            }
        }
    }
}

impl std::error::Error for DatumError {}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> DatumError {
    DatumError::SyntaxError { line, col, msg: msg.into() }
}

/// A token with its 1-based column.
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = vec![];
    let mut col = 1usize;
    for piece in line.split_inclusive(char::is_whitespace) {
        let trimmed = piece.trim_end_matches(char::is_whitespace);
        if !trimmed.is_empty() {
            if trimmed.starts_with('#') {
                break;
            }
            out.push(Tok { text: trimmed, col });
        }
        col += piece.chars().count();
    }
    out
}

fn parse_q(t: &Tok<'_>, line: usize) -> Result<Q, DatumError> {
    Q::from_str(t.text).map_err(|_| syntax(line, t.col, format!("expected a rational, got `{}`", t.text)))
}

fn parse_int<T: FromStr>(t: &Tok<'_>, line: usize, what: &str) -> Result<T, DatumError> {
    t.text
        .parse()
        .map_err(|_| syntax(line, t.col, format!("expected {what}, got `{}`", t.text)))
}

/// A ring under construction.
struct RingBlock {
    line: usize,
    basis: Vec<BasisElt>,
    /// `(line, i, j, value-as-names)` product entries.
    products: Vec<(usize, String, String, Vec<(Q, String)>)>,
}

struct MapBlock {
    line: usize,
    src: String,
    dst: String,
    rows: Vec<(usize, Vec<Q>)>,
}

#[derive(Default)]
struct DiagramBlock {
    xtilde: Option<(usize, String)>,
    strata: Option<(usize, Vec<String>)>,
    j1: Option<(usize, String)>,
    g1: Option<(usize, String)>,
    restrictions: Vec<(usize, usize, usize, String)>,
    gysin: Vec<(usize, usize, usize, String)>,
}

/// Parse datum text into a validated [`DatumFile`].
pub fn parse_datum(text: &str) -> Result<DatumFile, DatumError> {
    enum Section {
        None,
        Meta,
        Ring(String),
        Map(String),
        Diagram,
    }

    let mut meta: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut rings: BTreeMap<String, RingBlock> = BTreeMap::new();
    let mut maps: BTreeMap<String, MapBlock> = BTreeMap::new();
    let mut diagram: Option<DiagramBlock> = None;
    let mut section = Section::None;
    let mut saw_any = false;

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        saw_any = true;
        let head = &toks[0];
        match head.text {
            "meta" => {
                if toks.len() != 1 {
                    return Err(syntax(ln, toks[1].col, "`meta` takes no arguments"));
                }
                section = Section::Meta;
            }
            "ring" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, head.col, "expected `ring <name>`"));
                }
                let name = toks[1].text.to_string();
                if rings.contains_key(&name) || maps.contains_key(&name) {
                    return Err(DatumError::DuplicateDefinition { line: ln, name });
                }
                rings.insert(
                    name.clone(),
                    RingBlock { line: ln, basis: vec![], products: vec![] },
                );
                section = Section::Ring(name);
            }
            "map" => {
                // map <name> : <src> -> <dst>
                if toks.len() != 6 || toks[2].text != ":" || toks[4].text != "->" {
                    return Err(syntax(ln, head.col, "expected `map <name> : <src> -> <dst>`"));
                }
                let name = toks[1].text.to_string();
                if maps.contains_key(&name) || rings.contains_key(&name) {
                    return Err(DatumError::DuplicateDefinition { line: ln, name });
                }
                maps.insert(
                    name.clone(),
                    MapBlock {
                        line: ln,
                        src: toks[3].text.to_string(),
                        dst: toks[5].text.to_string(),
                        rows: vec![],
                    },
                );
                section = Section::Map(name);
            }
            "diagram" => {
                if toks.len() != 1 {
                    return Err(syntax(ln, toks[1].col, "`diagram` takes no arguments"));
                }
                if diagram.is_some() {
                    return Err(DatumError::DuplicateDefinition { line: ln, name: "diagram".into() });
                }
                diagram = Some(DiagramBlock::default());
                section = Section::Diagram;
            }
            _ => match &mut section {
                Section::None => {
                    return Err(syntax(ln, head.col, "expected a section header (`meta`, `ring`, `map`, `diagram`)"));
                }
                Section::Meta => {
                    if toks.len() != 3 || toks[1].text != "=" {
                        return Err(syntax(ln, head.col, "expected `<key> = <value>` in meta"));
                    }
                    let key = head.text.to_string();
                    if !matches!(key.as_str(), "n" | "shape" | "sigma") {
                        return Err(syntax(ln, head.col, format!("unknown meta key `{key}`")));
                    }
                    if meta.contains_key(&key) {
                        return Err(DatumError::DuplicateDefinition { line: ln, name: key });
                    }
                    meta.insert(key, (ln, toks[2].text.to_string()));
                }
                Section::Ring(name) => {
                    let block = rings.get_mut(name).unwrap();
                    match head.text {
                        "basis" => {
                            // basis <name> deg <k> [weight <m>]
                            if !(toks.len() == 4 || toks.len() == 6)
                                || toks[2].text != "deg"
                                || (toks.len() == 6 && toks[4].text != "weight")
                            {
                                return Err(syntax(ln, head.col, "expected `basis <name> deg <k> [weight <m>]`"));
                            }
                            let bname = toks[1].text.to_string();
                            if block.basis.iter().any(|b| b.name == bname) {
                                return Err(DatumError::DuplicateDefinition { line: ln, name: bname });
                            }
                            let deg: i64 = parse_int(&toks[3], ln, "a degree")?;
                            let weight: i64 = if toks.len() == 6 {
                                parse_int(&toks[5], ln, "a weight")?
                            } else {
                                deg
                            };
                            block.basis.push(BasisElt { name: bname, p: deg - weight, q: weight });
                        }
                        "product" => {
                            // product <a> <b> = <terms>
                            if toks.len() < 5 || toks[3].text != "=" {
                                return Err(syntax(ln, head.col, "expected `product <a> <b> = <value>`"));
                            }
                            let value = parse_terms(&toks[4..], ln)?;
                            block.products.push((
                                ln,
                                toks[1].text.to_string(),
                                toks[2].text.to_string(),
                                value,
                            ));
                        }
                        other => {
                            return Err(syntax(ln, head.col, format!("unknown ring key `{other}`")));
                        }
                    }
                }
                Section::Map(name) => {
                    let block = maps.get_mut(name).unwrap();
                    if head.text != "row" {
                        return Err(syntax(ln, head.col, format!("unknown map key `{}`", head.text)));
                    }
                    let mut entries = vec![];
                    for t in &toks[1..] {
                        entries.push(parse_q(t, ln)?);
                    }
                    block.rows.push((ln, entries));
                }
                Section::Diagram => {
                    let d = diagram.as_mut().unwrap();
                    match head.text {
                        "xtilde" | "j1" | "g1" => {
                            if toks.len() != 3 || toks[1].text != "=" {
                                return Err(syntax(ln, head.col, "expected `<key> = <name>`"));
                            }
                            let slot = match head.text {
                                "xtilde" => &mut d.xtilde,
                                "j1" => &mut d.j1,
                                _ => &mut d.g1,
                            };
                            if slot.is_some() {
                                return Err(DatumError::DuplicateDefinition {
                                    line: ln,
                                    name: head.text.into(),
                                });
                            }
                            *slot = Some((ln, toks[2].text.to_string()));
                        }
                        "strata" => {
                            if toks.len() < 2 || toks[1].text != "=" {
                                return Err(syntax(ln, head.col, "expected `strata = <names...>`"));
                            }
                            if d.strata.is_some() {
                                return Err(DatumError::DuplicateDefinition { line: ln, name: "strata".into() });
                            }
                            d.strata = Some((ln, toks[2..].iter().map(|t| t.text.to_string()).collect()));
                        }
                        "restriction" | "gysin" => {
                            if toks.len() != 5 || toks[3].text != "=" {
                                return Err(syntax(
                                    ln,
                                    head.col,
                                    format!("expected `{} <p> <k> = <map>`", head.text),
                                ));
                            }
                            let p: usize = parse_int(&toks[1], ln, "a stratum index")?;
                            let k: usize = parse_int(&toks[2], ln, "a face index")?;
                            if p == 0 {
                                return Err(syntax(ln, toks[1].col, "stratum indices start at 1"));
                            }
                            let target = if head.text == "restriction" {
                                &mut d.restrictions
                            } else {
                                &mut d.gysin
                            };
                            if target.iter().any(|&(_, p2, k2, _)| p2 == p && k2 == k) {
                                return Err(DatumError::DuplicateDefinition {
                                    line: ln,
                                    name: format!("{} {p} {k}", head.text),
                                });
                            }
                            target.push((ln, p, k, toks[4].text.to_string()));
                        }
                        other => {
                            return Err(syntax(ln, head.col, format!("unknown diagram key `{other}`")));
                        }
                    }
                }
            },
        }
    }

    if !saw_any {
        return Err(syntax(1, 1, "empty datum"));
    }

    assemble(meta, rings, maps, diagram)
}

/// Parse `c1 name1 + c2 name2 + …` or the literal `0`.
fn parse_terms(toks: &[Tok<'_>], ln: usize) -> Result<Vec<(Q, String)>, DatumError> {
    if toks.len() == 1 && toks[0].text == "0" {
        return Ok(vec![]);
    }
    let mut out = vec![];
    let mut i = 0;
    loop {
        if i + 1 >= toks.len() {
            return Err(syntax(
                ln,
                toks.last().map(|t| t.col).unwrap_or(1),
                "expected `<coefficient> <name>` term",
            ));
        }
        let c = parse_q(&toks[i], ln)?;
        out.push((c, toks[i + 1].text.to_string()));
        i += 2;
        if i == toks.len() {
            return Ok(out);
        }
        if toks[i].text != "+" {
            return Err(syntax(ln, toks[i].col, "terms must be joined with `+`"));
        }
        i += 1;
    }
}

fn assemble(
    meta: BTreeMap<String, (usize, String)>,
    ring_blocks: BTreeMap<String, RingBlock>,
    map_blocks: BTreeMap<String, MapBlock>,
    diagram: Option<DiagramBlock>,
) -> Result<DatumFile, DatumError> {
    let (n_line, n_str) = meta
        .get("n")
        .ok_or_else(|| syntax(1, 1, "meta is missing `n`"))?;
    let n: i64 = n_str
        .parse()
        .map_err(|_| syntax(*n_line, 1, format!("invalid dimension `{n_str}`")))?;
    let (shape_line, shape_str) = meta
        .get("shape")
        .ok_or_else(|| syntax(1, 1, "meta is missing `shape`"))?;
    let kind = DatumKind::parse(shape_str)
        .ok_or_else(|| syntax(*shape_line, 1, format!("unknown shape `{shape_str}`")))?;
    let sigma: usize = match meta.get("sigma") {
        Some((line, s)) => s
            .parse()
            .map_err(|_| syntax(*line, 1, format!("invalid sigma `{s}`")))?,
        None => 0,
    };

    // Build the rings.
    let mut rings: BTreeMap<String, Cdga> = BTreeMap::new();
    for (name, block) in &ring_blocks {
        if block.basis.is_empty() {
            return Err(syntax(block.line, 1, format!("ring `{name}` has no basis")));
        }
        let unit = block
            .basis
            .iter()
            .position(|b| b.degree() == 0)
            .ok_or_else(|| {
                DatumError::DatumInvariantViolation(format!("ring `{name}` has no degree-0 element"))
            })?;
        let index: BTreeMap<&str, usize> = block
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.name.as_str(), i))
            .collect();
        let mut c = Cdga::new(block.basis.clone(), unit, (1, 0));
        for (ln, a, b, val) in &block.products {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| DatumError::UndefinedName { line: *ln, name: a.clone() })?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| DatumError::UndefinedName { line: *ln, name: b.clone() })?;
            let mut v: SparseVec = BTreeMap::new();
            for (coef, tname) in val {
                let it = *index
                    .get(tname.as_str())
                    .ok_or_else(|| DatumError::UndefinedName { line: *ln, name: tname.clone() })?;
                let e = v.entry(it).or_insert_with(Q::zero);
                *e += coef.clone();
            }
            v.retain(|_, c| !c.is_zero());
            if ia == unit || ib == unit {
                return Err(DatumError::DatumInvariantViolation(format!(
                    "ring `{name}`: unit products are implicit, do not list them"
                )));
            }
            c.set_product_sym(ia, ib, v);
        }
        rings.insert(name.clone(), c);
    }

    // Build the maps.
    struct BuiltMap {
        line: usize,
        src: String,
        dst: String,
        mat: Mat,
    }
    let mut mats: BTreeMap<String, BuiltMap> = BTreeMap::new();
    for (name, block) in &map_blocks {
        let src_dim = if let Some(k) = block.src.strip_prefix("Q^") {
            k.parse::<usize>()
                .map_err(|_| syntax(block.line, 1, format!("bad formal source `{}`", block.src)))?
        } else {
            rings
                .get(&block.src)
                .ok_or_else(|| DatumError::UndefinedName { line: block.line, name: block.src.clone() })?
                .dim()
        };
        let dst = rings
            .get(&block.dst)
            .ok_or_else(|| DatumError::UndefinedName { line: block.line, name: block.dst.clone() })?;
        if block.rows.len() != dst.dim() {
            return Err(DatumError::DatumInvariantViolation(format!(
                "map `{name}` has {} rows but `{}` has dimension {}",
                block.rows.len(),
                block.dst,
                dst.dim()
            )));
        }
        let mut mat = Mat::zero(dst.dim(), src_dim);
        for (r, (ln, entries)) in block.rows.iter().enumerate() {
            if entries.len() != src_dim {
                return Err(syntax(
                    *ln,
                    1,
                    format!("map `{name}`: expected {src_dim} entries per row, got {}", entries.len()),
                ));
            }
            for (cidx, x) in entries.iter().enumerate() {
                if !x.is_zero() {
                    mat.set(r, cidx, x.clone());
                }
            }
        }
        mats.insert(
            name.clone(),
            BuiltMap { line: block.line, src: block.src.clone(), dst: block.dst.clone(), mat },
        );
    }

    // Assemble the diagram.
    let d = diagram.ok_or_else(|| syntax(1, 1, "missing `diagram` section"))?;
    let (xl, xname) = d
        .xtilde
        .as_ref()
        .ok_or_else(|| syntax(1, 1, "diagram is missing `xtilde`"))?;
    let xtilde = rings
        .get(xname)
        .ok_or_else(|| DatumError::UndefinedName { line: *xl, name: xname.clone() })?
        .clone();
    let (sl, snames) = d
        .strata
        .as_ref()
        .ok_or_else(|| syntax(1, 1, "diagram is missing `strata`"))?;
    let mut strata = vec![];
    for s in snames {
        strata.push(
            rings
                .get(s)
                .ok_or_else(|| DatumError::UndefinedName { line: *sl, name: s.clone() })?
                .clone(),
        );
    }

    // Look up a referenced map and check its declared endpoints match
    // the role it plays in the diagram.
    let fetch = |ln: usize, mname: &str, src: &str, dst: &str,
                 mats: &BTreeMap<String, BuiltMap>|
     -> Result<Mat, DatumError> {
        let m = mats
            .get(mname)
            .ok_or_else(|| DatumError::UndefinedName { line: ln, name: mname.to_string() })?;
        if m.src != src || m.dst != dst {
            return Err(syntax(
                m.line,
                1,
                format!("map `{mname}` is declared {} -> {} but the diagram uses it as {src} -> {dst}", m.src, m.dst),
            ));
        }
        Ok(m.mat.clone())
    };
    let first_stratum = snames
        .first()
        .ok_or_else(|| syntax(*sl, 1, "diagram needs at least one stratum"))?;
    let (j1l, j1n) = d.j1.as_ref().ok_or_else(|| syntax(1, 1, "diagram is missing `j1`"))?;
    let j1 = fetch(*j1l, j1n, xname, first_stratum, &mats)?;
    let (g1l, g1n) = d.g1.as_ref().ok_or_else(|| syntax(1, 1, "diagram is missing `g1`"))?;
    let g1 = fetch(*g1l, g1n, &format!("Q^{sigma}"), first_stratum, &mats)?;

    let gather = |entries: &[(usize, usize, usize, String)],
                  mats: &BTreeMap<String, BuiltMap>,
                  ends: &dyn Fn(usize) -> Result<(String, String), DatumError>|
     -> Result<Vec<Vec<Mat>>, DatumError> {
        let mut out: Vec<Vec<Mat>> = vec![];
        let max_p = entries.iter().map(|&(_, p, _, _)| p).max().unwrap_or(0);
        for p in 1..=max_p {
            let mut level = vec![];
            let max_k = entries
                .iter()
                .filter(|&&(_, p2, _, _)| p2 == p)
                .map(|&(_, _, k, _)| k)
                .max()
                .unwrap_or(0);
            for k in 0..=max_k {
                let found = entries.iter().find(|&&(_, p2, k2, _)| p2 == p && k2 == k);
                let (ln, _, _, mname) = found.ok_or_else(|| {
                    DatumError::DatumInvariantViolation(format!("missing map for stratum {p}, face {k}"))
                })?;
                let (src, dst) = ends(p)?;
                level.push(fetch(*ln, mname, &src, &dst, mats)?);
            }
            out.push(level);
        }
        Ok(out)
    };
    let stratum_name = |p: usize| -> Result<&str, DatumError> {
        snames
            .get(p - 1)
            .map(|s| s.as_str())
            .ok_or_else(|| DatumError::DatumInvariantViolation(format!("stratum index {p} out of range")))
    };
    let restrictions = gather(&d.restrictions, &mats, &|p| {
        Ok((stratum_name(p)?.to_string(), stratum_name(p + 1)?.to_string()))
    })?;
    let gysin = if d.gysin.is_empty() {
        None
    } else {
        Some(gather(&d.gysin, &mats, &|p| {
            let dst = if p == 1 { xname.clone() } else { stratum_name(p - 1)?.to_string() };
            Ok((stratum_name(p)?.to_string(), dst))
        })?)
    };

    let datum = ResolutionDatum { n, sigma, xtilde, strata, restrictions, j1, g1, gysin };
    datum.validate().map_err(|e| {
        let msg = e.to_string();
        let msg = msg.strip_prefix("datum invariant violated: ").unwrap_or(&msg).to_string();
        DatumError::DatumInvariantViolation(msg)
    })?;
    Ok(DatumFile { datum, kind })
}

/// Resolve a bundled datum by name.  Parameterized families take
/// colon-separated arguments, e.g. `nodal_curve:3,4,1`.
pub fn builtin(name: &str) -> Option<DatumFile> {
    use crate::bundled;
    use crate::formality::Shape;
    let (base, args) = match name.split_once(':') {
        Some((b, a)) => (b, a.split(',').collect::<Vec<_>>()),
        None => (name, vec![]),
    };
    let int = |i: usize| -> Option<i64> { args.get(i)?.trim().parse().ok() };
    match (base, args.len()) {
        ("two_lines_cp2", 0) => Some(DatumFile {
            datum: bundled::two_lines_cp2(),
            kind: DatumKind::Variety(Shape::Contraction),
        }),
        ("nodal_curve", 3) => Some(DatumFile {
            datum: bundled::nodal_curve(int(0)?, int(1)?, int(2)? as usize),
            kind: DatumKind::Variety(Shape::Surface),
        }),
        ("segre", 0) => Some(DatumFile {
            datum: bundled::segre(),
            kind: DatumKind::Variety(Shape::ConnectedLink),
        }),
        ("cone_over_curve", 2) => Some(DatumFile {
            datum: bundled::cone_over_curve(int(0)? as usize, int(1)?),
            kind: DatumKind::Variety(Shape::SmoothDivisor),
        }),
        ("genus_divisor", 1) => Some(DatumFile {
            datum: bundled::genus_divisor(int(0)? as usize),
            kind: DatumKind::Divisor,
        }),
        ("punctured_line", 1) => Some(DatumFile {
            datum: bundled::punctured_line(int(0)? as usize),
            kind: DatumKind::Log,
        }),
        _ => None,
    }
}

/// Every bundled datum name (used by `selftest` and the data emitter).
pub const BUILTIN_NAMES: &[&str] = &[
    "two_lines_cp2",
    "nodal_curve:3,4,1",
    "nodal_curve:2,3,0",
    "nodal_curve:4,5,2",
    "segre",
    "cone_over_curve:2,1",
    "genus_divisor:2",
    "punctured_line:3",
];

/// Render a datum back to text.  `parse_datum(print_datum(f))` yields
/// the same structured content.
pub fn print_datum(file: &DatumFile, ring_names: Option<&[String]>) -> String {
    let d = &file.datum;
    let mut out = String::new();
    let _ = writeln!(out, "meta");
    let _ = writeln!(out, "  n = {}", d.n);
    let _ = writeln!(out, "  shape = {}", file.kind.name());
    let _ = writeln!(out, "  sigma = {}", d.sigma);

    let default_names: Vec<String> = std::iter::once("X".to_string())
        .chain((1..=d.strata.len()).map(|p| format!("D{p}")))
        .collect();
    let names: &[String] = ring_names.unwrap_or(&default_names);
    let all: Vec<&Cdga> = std::iter::once(&d.xtilde).chain(d.strata.iter()).collect();
    for (ring, name) in all.iter().zip(names) {
        let _ = writeln!(out, "\nring {name}");
        for b in &ring.basis {
            if b.q == b.degree() {
                let _ = writeln!(out, "  basis {} deg {}", b.name, b.degree());
            } else {
                let _ = writeln!(out, "  basis {} deg {} weight {}", b.name, b.degree(), b.q);
            }
        }
        for i in 0..ring.dim() {
            for j in i..ring.dim() {
                if i == ring.unit || j == ring.unit {
                    continue;
                }
                let v = ring.basis_product(i, j);
                if v.is_empty() {
                    continue;
                }
                let terms: Vec<String> = v
                    .iter()
                    .map(|(k, c)| format!("{c} {}", ring.basis[*k].name))
                    .collect();
                let _ = writeln!(
                    out,
                    "  product {} {} = {}",
                    ring.basis[i].name,
                    ring.basis[j].name,
                    terms.join(" + ")
                );
            }
        }
    }

    let write_map = |out: &mut String, name: &str, src: &str, dst: &str, m: &Mat| {
        let _ = writeln!(out, "\nmap {name} : {src} -> {dst}");
        for r in 0..m.rows {
            let entries: Vec<String> = (0..m.cols).map(|c| m.get(r, c).to_string()).collect();
            let _ = writeln!(out, "  row {}", entries.join(" "));
        }
    };
    write_map(&mut out, "j1", &names[0], &names[1], &d.j1);
    write_map(&mut out, "g1", &format!("Q^{}", d.sigma), &names[1], &d.g1);
    for (p0, level) in d.restrictions.iter().enumerate() {
        for (k, m) in level.iter().enumerate() {
            write_map(
                &mut out,
                &format!("r{}_{k}", p0 + 1),
                &names[p0 + 1],
                &names[p0 + 2],
                m,
            );
        }
    }
    if let Some(gy) = &d.gysin {
        for (p0, level) in gy.iter().enumerate() {
            for (k, m) in level.iter().enumerate() {
                write_map(&mut out, &format!("gy{}_{k}", p0 + 1), &names[p0 + 1], &names[p0], m);
            }
        }
    }

    let _ = writeln!(out, "\ndiagram");
    let _ = writeln!(out, "  xtilde = {}", names[0]);
    let _ = writeln!(out, "  strata = {}", names[1..=d.strata.len()].join(" "));
    let _ = writeln!(out, "  j1 = j1");
    let _ = writeln!(out, "  g1 = g1");
    for (p0, level) in d.restrictions.iter().enumerate() {
        for k in 0..level.len() {
            let _ = writeln!(out, "  restriction {} {k} = r{}_{k}", p0 + 1, p0 + 1);
        }
    }
    if let Some(gy) = &d.gysin {
        for (p0, level) in gy.iter().enumerate() {
            for k in 0..level.len() {
                let _ = writeln!(out, "  gysin {} {k} = gy{}_{k}", p0 + 1, p0 + 1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_a_syntax_error_at_one_one() {
        match parse_datum("") {
            Err(DatumError::SyntaxError { line: 1, col: 1, .. }) => {}
            other => panic!("expected 1:1 syntax error, got {other:?}"),
        }
        match parse_datum("   \n# only a comment\n") {
            Err(DatumError::SyntaxError { line: 1, col: 1, .. }) => {}
            other => panic!("expected 1:1 syntax error, got {other:?}"),
        }
    }

    #[test]
    fn two_lines_datum_parses_with_the_expected_counts() {
        let f = builtin("two_lines_cp2").unwrap();
        let text = print_datum(&f, None);
        let parsed = parse_datum(&text).unwrap();
        assert_eq!(parsed.datum.n, 2);
        assert_eq!(parsed.datum.sigma, 1);
        // Component counts per stratum: two lines, one double point.
        let comps: Vec<usize> = parsed
            .datum
            .strata
            .iter()
            .map(|s| s.degree_indices(0).len())
            .collect();
        assert_eq!(comps, vec![2, 1]);
        assert_eq!(parsed.kind, DatumKind::Variety(Shape::Contraction));
    }

    #[test]
    fn print_parse_print_is_the_identity_on_every_builtin() {
        for name in BUILTIN_NAMES {
            let f = builtin(name).unwrap();
            let text = print_datum(&f, None);
            let reparsed = parse_datum(&text)
                .unwrap_or_else(|e| panic!("reparsing bundled `{name}` failed: {e}"));
            let text2 = print_datum(&reparsed, None);
            assert_eq!(text, text2, "round trip not stable for `{name}`");
        }
    }

    #[test]
    fn corrupted_restriction_reports_an_invariant_violation() {
        let f = builtin("two_lines_cp2").unwrap();
        let mut text = print_datum(&f, None);
        // Break multiplicativity of a restriction by rescaling one row.
        text = text.replace("map r1_1 : D1 -> D2\n  row 1 1", "map r1_1 : D1 -> D2\n  row 1 7");
        let err = parse_datum(&text).unwrap_err();
        match err {
            DatumError::DatumInvariantViolation(msg) => {
                assert!(msg.contains("ring map") || msg.contains("multiplicative") || msg.contains("map"),
                    "unexpected message: {msg}");
            }
            other => panic!("expected invariant violation, got {other:?}"),
        }
    }

    #[test]
    fn undefined_and_duplicate_names_are_reported() {
        let f = builtin("two_lines_cp2").unwrap();
        let text = print_datum(&f, None).replace("  j1 = j1", "  j1 = nosuchmap");
        assert!(matches!(
            parse_datum(&text),
            Err(DatumError::UndefinedName { name, .. }) if name == "nosuchmap"
        ));
        let text = print_datum(&f, None).replace("ring D2", "ring D1");
        assert!(matches!(
            parse_datum(&text),
            Err(DatumError::DuplicateDefinition { name, .. }) if name == "D1"
        ));
    }

    #[test]
    fn unknown_keys_are_rejected_with_position() {
        let f = builtin("two_lines_cp2").unwrap();
        let text = print_datum(&f, None).replace("  n = 2", "  n = 2\n  frobnicate = yes");
        match parse_datum(&text) {
            Err(DatumError::SyntaxError { line, col, msg }) => {
                assert_eq!((line, col), (3, 3));
                assert!(msg.contains("frobnicate"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
