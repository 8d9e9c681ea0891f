use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use ttg_core::homalg::{compact_koszul_module, GroupCohomology};
use ttg_core::modrep::{GroupData, GroupModule, Subgroup};
use ttg_core::poly::{GradedPolyRing, HomogeneousIdeal, Polynomial, Ring, RingHom};
use ttg_core::quillen::{builtin_cohomology, restriction_for, CohomologyPresentation};
use ttg_core::{Error, Field, Matrix};

/// A problem in a workspace file, located at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Ann,
    Rank,
    Both,
}

impl Oracle {
    pub fn parse(s: &str) -> Option<Oracle> {
        match s {
            "ann" => Some(Oracle::Ann),
            "rank" => Some(Oracle::Rank),
            "both" => Some(Oracle::Both),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Ann => "ann",
            Oracle::Rank => "rank",
            Oracle::Both => "both",
        }
    }
}

/// Values from a `[params]` block; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub degree_bound: Option<i32>,
    pub stabilize: Option<i32>,
    pub ext_degree: Option<u32>,
    pub oracle: Option<Oracle>,
    pub tmax: Option<u32>,
    pub truncation: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct ModuleEntry {
    pub module: GroupModule,
    /// Name of the subgroup the module lives over, if not the whole group.
    pub over: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CohomologyEntry {
    pub presentation: CohomologyPresentation,
    /// Group whose `Ext` ring should reproduce this presentation.
    pub group: Option<GroupData>,
}

#[derive(Clone, Debug)]
pub struct DatumEntry {
    pub source: String,
    pub target: String,
    pub hom: RingHom,
}

#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub u: Polynomial,
    /// Replacement values at given subgroup labels.
    pub overrides: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: Field,
    pub ext_degree: Option<u32>,
    pub group: Option<GroupData>,
    pub modules: BTreeMap<String, ModuleEntry>,
    pub ideals: BTreeMap<String, HomogeneousIdeal>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub rings: BTreeMap<String, Ring>,
    pub cohomology: BTreeMap<String, CohomologyEntry>,
    pub data: BTreeMap<String, DatumEntry>,
    pub families: BTreeMap<String, FamilyEntry>,
    pub params: Params,
}

impl Workspace {
    pub fn group(&self) -> Result<&GroupData, String> {
        self.group
            .as_ref()
            .ok_or_else(|| "workspace has no [group] block".to_string())
    }
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    value: String,
    line: usize,
    key_col: usize,
    val_col: usize,
}

impl Entry {
    fn at(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            line: self.line,
            column: self.val_col,
            message: message.into(),
        }
    }

    /// Comma-separated pieces of the value with their columns.
    fn pieces(&self, sep: char) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self
            .value
            .char_indices()
            .chain(std::iter::once((self.value.len(), sep)))
        {
            if c == sep {
                let raw = &self.value[start..i];
                let lead = raw.len() - raw.trim_start().len();
                let col = self.val_col + self.value[..start + lead].chars().count();
                if !raw.trim().is_empty() {
                    out.push((raw.trim().to_string(), col));
                }
                start = i + c.len_utf8();
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Block {
    kind: String,
    name: Option<String>,
    line: usize,
    column: usize,
    entries: Vec<Entry>,
}

impl Block {
    fn at(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn require(&self, key: &str) -> Result<&Entry, Diagnostic> {
        self.get(key)
            .ok_or_else(|| self.at(format!("[{}] block needs '{key}'", self.kind)))
    }

    fn check_keys(&self, allowed: &[&str], prefixes: &[&str]) -> Result<(), Diagnostic> {
        for (i, e) in self.entries.iter().enumerate() {
            let known =
                allowed.contains(&e.key.as_str()) || prefixes.iter().any(|p| e.key.starts_with(p));
            if !known {
                return Err(Diagnostic {
                    line: e.line,
                    column: e.key_col,
                    message: format!("unknown key '{}' in [{}] block", e.key, self.kind),
                });
            }
            if self.entries[..i].iter().any(|f| f.key == e.key) {
                return Err(Diagnostic {
                    line: e.line,
                    column: e.key_col,
                    message: format!("duplicate key '{}'", e.key),
                });
            }
        }
        Ok(())
    }
}

fn col_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn split_entry(line_no: usize, line: &str, offset: usize) -> Result<Entry, Diagnostic> {
    let text = &line[offset..];
    let Some(eq) = text.find('=') else {
        let lead = text.len() - text.trim_start().len();
        return Err(Diagnostic {
            line: line_no,
            column: col_of(line, offset + lead),
            message: "expected 'key = value'".into(),
        });
    };
    let raw_key = &text[..eq];
    let key_lead = raw_key.len() - raw_key.trim_start().len();
    let raw_val = &text[eq + 1..];
    let val_lead = raw_val.len() - raw_val.trim_start().len();
    let key = raw_key.trim().to_string();
    let key_col = col_of(line, offset + key_lead);
    if key.is_empty() {
        return Err(Diagnostic {
            line: line_no,
            column: key_col,
            message: "missing key before '='".into(),
        });
    }
    Ok(Entry {
        key,
        value: raw_val.trim().to_string(),
        line: line_no,
        key_col,
        val_col: col_of(line, offset + eq + 1 + val_lead),
    })
}

fn split_blocks(text: &str) -> (Vec<Block>, Vec<Diagnostic>) {
    let mut blocks: Vec<Block> = Vec::new();
    let mut diags = Vec::new();
    for (i, full) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match full.find('#') {
            Some(h) => &full[..h],
            None => full,
        };
        let lead = line.len() - line.trim_start().len();
        if line.trim().is_empty() {
            continue;
        }
        if line[lead..].starts_with('[') {
            let Some(close) = line.find(']') else {
                diags.push(Diagnostic {
                    line: line_no,
                    column: col_of(line, lead),
                    message: "missing ']'".into(),
                });
                continue;
            };
            let mut words = line[lead + 1..close].split_whitespace();
            let Some(kind) = words.next() else {
                diags.push(Diagnostic {
                    line: line_no,
                    column: col_of(line, lead),
                    message: "empty block header".into(),
                });
                continue;
            };
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                diags.push(Diagnostic {
                    line: line_no,
                    column: col_of(line, lead),
                    message: "block header takes a kind and at most one name".into(),
                });
                continue;
            }
            blocks.push(Block {
                kind: kind.to_string(),
                name,
                line: line_no,
                column: col_of(line, lead),
                entries: Vec::new(),
            });
            if !line[close + 1..].trim().is_empty() {
                match split_entry(line_no, line, close + 1) {
                    Ok(e) => blocks.last_mut().unwrap().entries.push(e),
                    Err(d) => diags.push(d),
                }
            }
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            diags.push(Diagnostic {
                line: line_no,
                column: col_of(line, lead),
                message: "entry outside any block".into(),
            });
            continue;
        };
        match split_entry(line_no, line, 0) {
            Ok(e) => block.entries.push(e),
            Err(d) => diags.push(d),
        }
    }
    (blocks, diags)
}

fn parse_int<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T, Diagnostic> {
    e.value
        .parse::<T>()
        .map_err(|_| e.at(format!("expected {what}, found '{}'", e.value)))
}

fn parse_ints(e: &Entry) -> Result<Vec<i64>, Diagnostic> {
    e.pieces(',')
        .into_iter()
        .map(|(s, col)| {
            s.parse::<i64>().map_err(|_| Diagnostic {
                line: e.line,
                column: col,
                message: format!("expected an integer, found '{s}'"),
            })
        })
        .collect()
}

/// `1 0; 1 1` (rows separated by `;`, entries by spaces or commas).
fn parse_matrix(e: &Entry, field: &Field, dim: usize) -> Result<Matrix, Diagnostic> {
    let mut rows = Vec::new();
    for (row, col) in e.pieces(';') {
        let entries: Result<Vec<i64>, _> = row
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::parse::<i64>)
            .collect();
        let entries = entries.map_err(|_| Diagnostic {
            line: e.line,
            column: col,
            message: format!("bad matrix row '{row}'"),
        })?;
        if entries.len() != dim {
            return Err(Diagnostic {
                line: e.line,
                column: col,
                message: format!("row has {} entries, expected {dim}", entries.len()),
            });
        }
        rows.push(entries);
    }
    if rows.len() != dim {
        return Err(e.at(format!("matrix has {} rows, expected {dim}", rows.len())));
    }
    if dim == 0 {
        return Ok(Matrix::zeros(field, 0, 0));
    }
    Matrix::from_int_rows(field, &rows).map_err(|err| e.at(err.to_string()))
}

fn core_message(err: &Error) -> String {
    match err {
        Error::Parse(m)
        | Error::Usage(m)
        | Error::Invalid(m)
        | Error::Budget(m)
        | Error::Window(m)
        | Error::Internal(m) => m.clone(),
    }
}

fn parse_poly(
    ring: &Ring,
    text: &str,
    line: usize,
    column: usize,
) -> Result<Polynomial, Diagnostic> {
    Polynomial::parse(ring, text).map_err(|err| Diagnostic {
        line,
        column,
        message: core_message(&err),
    })
}

struct Parser {
    ws: Workspace,
    defined: BTreeMap<String, (String, usize)>,
    field_seen: bool,
}

impl Parser {
    fn group(&self, b: &Block) -> Result<GroupData, Diagnostic> {
        self.ws
            .group
            .clone()
            .ok_or_else(|| b.at(format!("[{}] needs a [group] block above it", b.kind)))
    }

    fn cohomology_ring(&self, b: &Block, group: &GroupData) -> Result<Ring, Diagnostic> {
        GroupCohomology::shared(group, 3)
            .map(|c| c.ring().clone())
            .map_err(|e| b.at(core_message(&e)))
    }

    fn lookup_module(&self, name: &str, e: &Entry, col: usize) -> Result<ModuleEntry, Diagnostic> {
        self.ws
            .modules
            .get(name)
            .cloned()
            .ok_or_else(|| Diagnostic {
                line: e.line,
                column: col,
                message: format!("unknown module '{name}'"),
            })
    }

    fn lookup_subgroup(&self, e: &Entry) -> Result<Subgroup, Diagnostic> {
        self.ws
            .subgroups
            .get(&e.value)
            .cloned()
            .ok_or_else(|| e.at(format!("unknown subgroup '{}'", e.value)))
    }

    fn block(&mut self, b: &Block) -> Result<(), Diagnostic> {
        let named = !matches!(b.kind.as_str(), "field" | "group" | "params");
        match (&b.name, named) {
            (None, true) => return Err(b.at(format!("[{}] block needs a name", b.kind))),
            (Some(_), false) => return Err(b.at(format!("[{}] block takes no name", b.kind))),
            _ => {}
        }
        if let Some(name) = &b.name {
            if let Some((kind, line)) = self.defined.get(name) {
                return Err(b.at(format!(
                    "name '{name}' already used by the [{kind}] block on line {line}"
                )));
            }
            self.defined.insert(name.clone(), (b.kind.clone(), b.line));
        }
        let name = b.name.clone().unwrap_or_default();
        match b.kind.as_str() {
            "field" => self.field_block(b),
            "group" => self.group_block(b),
            "params" => self.params_block(b),
            "module" => self.module_block(b, name),
            "ideal" => self.ideal_block(b, name),
            "subgroup" => self.subgroup_block(b, name),
            "ring" => self.ring_block(b, name),
            "cohomology" => self.cohomology_block(b, name),
            "datum" => self.datum_block(b, name),
            "family" => self.family_block(b, name),
            other => Err(b.at(format!("unknown block kind '{other}'"))),
        }
    }

    fn field_block(&mut self, b: &Block) -> Result<(), Diagnostic> {
        b.check_keys(&["p", "ext"], &[])?;
        if self.field_seen {
            return Err(b.at("second [field] block"));
        }
        let pe = b.require("p")?;
        let p: u32 = parse_int(pe, "a prime")?;
        self.ws.field = Field::prime(p).map_err(|e| pe.at(core_message(&e)))?;
        if let Some(e) = b.get("ext") {
            let m: u32 = parse_int(e, "an extension degree")?;
            if m == 0 {
                return Err(e.at("extension degree must be positive"));
            }
            self.ws.ext_degree = Some(m);
        }
        self.field_seen = true;
        Ok(())
    }

    fn group_block(&mut self, b: &Block) -> Result<(), Diagnostic> {
        b.check_keys(&["orders"], &[])?;
        if !self.field_seen {
            return Err(b.at("[group] needs a [field] block above it"));
        }
        if self.ws.group.is_some() {
            return Err(b.at("second [group] block"));
        }
        let e = b.require("orders")?;
        let orders: Vec<u32> = parse_ints(e)?
            .into_iter()
            .map(|o| o.max(0) as u32)
            .collect();
        self.ws.group =
            Some(GroupData::new(&self.ws.field, &orders).map_err(|err| e.at(core_message(&err)))?);
        Ok(())
    }

    fn params_block(&mut self, b: &Block) -> Result<(), Diagnostic> {
        b.check_keys(
            &[
                "degree_bound",
                "stabilize",
                "ext_degree",
                "oracle",
                "tmax",
                "truncation",
            ],
            &[],
        )?;
        let p = &mut self.ws.params;
        for e in &b.entries {
            match e.key.as_str() {
                "degree_bound" => p.degree_bound = Some(parse_int(e, "a degree bound")?),
                "stabilize" => p.stabilize = Some(parse_int(e, "a window length")?),
                "ext_degree" => p.ext_degree = Some(parse_int(e, "an extension degree")?),
                "tmax" => p.tmax = Some(parse_int(e, "a bound on t")?),
                "truncation" => p.truncation = Some(parse_int(e, "a truncation degree")?),
                _ => {
                    p.oracle = Some(
                        Oracle::parse(&e.value)
                            .ok_or_else(|| e.at("oracle must be ann, rank or both"))?,
                    )
                }
            }
        }
        Ok(())
    }

    fn module_block(&mut self, b: &Block, name: String) -> Result<(), Diagnostic> {
        b.check_keys(
            &[
                "kind", "over", "dim", "rank", "alpha", "length", "of", "ideal",
            ],
            &["g"],
        )?;
        let over = b
            .get("over")
            .map(|e| self.lookup_subgroup(e).map(|s| (e.value.clone(), s)))
            .transpose()?;
        let group = match &over {
            Some((_, s)) => s.group().clone(),
            None => self.group(b)?,
        };
        let kind = b
            .get("kind")
            .map(|e| e.value.as_str())
            .unwrap_or("matrices");
        let allowed: &[&str] = match kind {
            "matrices" => &["dim"],
            "trivial" => &[],
            "free" => &["rank"],
            "shifted" => &["alpha", "length"],
            "koszul" => &["of", "ideal"],
            "tensor" | "sum" | "dual" => &["of"],
            _ => {
                return Err(b
                    .require("kind")?
                    .at(format!("unknown module kind '{kind}'")))
            }
        };
        for e in &b.entries {
            let generic = e.key == "kind" || e.key == "over";
            let is_gen = e.key.starts_with('g') && kind == "matrices";
            if !generic && !is_gen && !allowed.contains(&e.key.as_str()) {
                return Err(Diagnostic {
                    line: e.line,
                    column: e.key_col,
                    message: format!("key '{}' does not apply to a {kind} module", e.key),
                });
            }
        }
        let module = match kind {
            "matrices" => {
                let de = b.require("dim")?;
                let dim: usize = parse_int(de, "a dimension")?;
                let mut gens = Vec::new();
                for i in 1..=group.rank() {
                    let e = b.require(&format!("g{i}"))?;
                    gens.push(parse_matrix(e, group.field(), dim)?);
                }
                if let Some(extra) = b.entries.iter().find(|e| {
                    e.key.starts_with('g')
                        && e.key[1..]
                            .parse::<usize>()
                            .map_or(true, |i| i == 0 || i > group.rank())
                }) {
                    return Err(Diagnostic {
                        line: extra.line,
                        column: extra.key_col,
                        message: format!(
                            "unexpected '{}': the group has {} generators",
                            extra.key,
                            group.rank()
                        ),
                    });
                }
                GroupModule::from_matrices(&group, dim, gens)
                    .map_err(|err| b.at(format!("module {name}: {}", core_message(&err))))?
            }
            "trivial" => GroupModule::trivial(&group),
            "free" => {
                let n = b
                    .get("rank")
                    .map(|e| parse_int::<usize>(e, "a rank"))
                    .transpose()?
                    .unwrap_or(1);
                GroupModule::free(&group, n)
            }
            "shifted" => {
                let ae = b.require("alpha")?;
                let alpha: Vec<u32> = parse_ints(ae)?
                    .into_iter()
                    .map(|a| group.field().from_int(a))
                    .collect();
                let le = b.require("length")?;
                let len: usize = parse_int(le, "a length")?;
                GroupModule::shifted_cyclic(&group, &alpha, len)
                    .map_err(|err| ae.at(core_message(&err)))?
            }
            "koszul" => {
                let oe = b.require("of")?;
                let x = self.lookup_module(&oe.value, oe, oe.val_col)?;
                let ie = b.require("ideal")?;
                let ideal = self
                    .ws
                    .ideals
                    .get(&ie.value)
                    .ok_or_else(|| ie.at(format!("unknown ideal '{}'", ie.value)))?;
                if x.over != over.as_ref().map(|o| o.0.clone()) {
                    return Err(oe.at(format!(
                        "module '{}' lives over a different group",
                        oe.value
                    )));
                }
                match compact_koszul_module(&x.module, ideal.generators())
                    .map_err(|err| ie.at(core_message(&err)))?
                {
                    Some(m) => m,
                    None => GroupModule::from_matrices(
                        &group,
                        0,
                        vec![Matrix::zeros(group.field(), 0, 0); group.rank()],
                    )
                    .map_err(|err| b.at(core_message(&err)))?,
                }
            }
            _ => {
                let oe = b.require("of")?;
                let parts = oe.pieces(',');
                let mut mods = Vec::new();
                for (n, col) in &parts {
                    let m = self.lookup_module(n, oe, *col)?;
                    if m.over != over.as_ref().map(|o| o.0.clone()) {
                        return Err(Diagnostic {
                            line: oe.line,
                            column: *col,
                            message: format!("module '{n}' lives over a different group"),
                        });
                    }
                    mods.push(m.module);
                }
                let arity_ok = match kind {
                    "dual" => mods.len() == 1,
                    _ => !mods.is_empty(),
                };
                if !arity_ok {
                    return Err(oe.at(format!("wrong number of operands for a {kind} module")));
                }
                let mut acc = mods[0].clone();
                for m in &mods[1..] {
                    acc = match kind {
                        "tensor" => acc.tensor_diag(m),
                        _ => acc.direct_sum(m),
                    }
                    .map_err(|err| oe.at(core_message(&err)))?;
                }
                if kind == "dual" {
                    acc = acc.dual();
                }
                acc
            }
        };
        self.ws.modules.insert(
            name,
            ModuleEntry {
                module,
                over: over.map(|o| o.0),
            },
        );
        Ok(())
    }

    fn ideal_block(&mut self, b: &Block, name: String) -> Result<(), Diagnostic> {
        b.check_keys(&["gens", "ring"], &[])?;
        let ring = match b.get("ring") {
            Some(e) => self
                .ws
                .rings
                .get(&e.value)
                .cloned()
                .ok_or_else(|| e.at(format!("unknown ring '{}'", e.value)))?,
            None => {
                let g = self.group(b)?;
                self.cohomology_ring(b, &g)?
            }
        };
        let ge = b.require("gens")?;
        let gens = ge
            .pieces(',')
            .into_iter()
            .map(|(s, col)| parse_poly(&ring, &s, ge.line, col))
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = HomogeneousIdeal::new(&ring, gens).map_err(|err| ge.at(core_message(&err)))?;
        self.ws.ideals.insert(name, ideal);
        Ok(())
    }

    fn subgroup_block(&mut self, b: &Block, name: String) -> Result<(), Diagnostic> {
        b.check_keys(&["basis"], &[])?;
        let group = self.group(b)?;
        let e = b.require("basis")?;
        let mut basis = Vec::new();
        for (piece, col) in e.pieces(';') {
            let inner = piece.trim_start_matches('(').trim_end_matches(')');
            let word: Result<Vec<i64>, _> =
                inner.split(',').map(|s| s.trim().parse::<i64>()).collect();
            let word = word.map_err(|_| Diagnostic {
                line: e.line,
                column: col,
                message: format!("bad group element '{piece}'"),
            })?;
            if word.len() != group.rank() {
                return Err(Diagnostic {
                    line: e.line,
                    column: col,
                    message: format!(
                        "group element has {} coordinates, expected {}",
                        word.len(),
                        group.rank()
                    ),
                });
            }
            basis.push(
                word.iter()
                    .zip(group.orders())
                    .map(|(&w, &o)| w.rem_euclid(o as i64) as u32)
                    .collect(),
            );
        }
        let sub = Subgroup::new(&group, basis).map_err(|err| e.at(core_message(&err)))?;
        self.ws.subgroups.insert(name, sub);
        Ok(())
    }

    fn ring_block(&mut self, b: &Block, name: String) -> Result<(), Diagnostic> {
        b.check_keys(&["gens", "relations"], &[])?;
        let ge = b.require("gens")?;
        let mut gens = Vec::new();
        for (piece, col) in ge.pieces(',') {
            let bad = || Diagnostic {
                line: ge.line,
                column: col,
                message: format!("expected 'name:degree', found '{piece}'"),
            };
            let (n, d) = piece.split_once(':').ok_or_else(bad)?;
            let d: i32 = d.trim().parse().map_err(|_| bad())?;
            gens.push((n.trim().to_string(), d));
        }
        let rels: Vec<String> = b
            .get("relations")
            .map(|e| e.pieces(',').into_iter().map(|p| p.0).collect())
            .unwrap_or_default();
        let ring = GradedPolyRing::from_parts(&self.ws.field, &gens, &rels)
            .map_err(|err| b.at(core_message(&err)))?;
        self.ws.rings.insert(name, ring);
        Ok(())
    }

    fn cohomology_block(&mut self, b: &Block, name: String) -> Result<(), Diagnostic> {
        b.check_keys(&["builtin", "gens", "relations", "group"], &[])?;
        let entry = if let Some(e) = b.get("builtin") {
            if b.get("gens").is_some() || b.get("relations").is_some() {
                return Err(e.at("'builtin' excludes 'gens' and 'relations'"));
            }
            let r: usize = parse_int(e, "a rank")?;
            let pres = builtin_cohomology(self.ws.field.characteristic(), r)
                .map_err(|err| e.at(core_message(&err)))?;
            let group = GroupData::elementary(self.ws.field.characteristic(), r).ok();
            CohomologyEntry {
                presentation: pres,
                group,
            }
        } else {
            let ge = b.require("gens")?;
            let mut gens = Vec::new();
            for (piece, col) in ge.pieces(',') {
                let bad = || Diagnostic {
                    line: ge.line,
                    column: col,
                    message: format!("expected 'name:degree', found '{piece}'"),
                };
                let (n, d) = piece.split_once(':').ok_or_else(bad)?;
                gens.push((
                    n.trim().to_string(),
                    d.trim().parse::<i32>().map_err(|_| bad())?,
                ));
            }
            let rels: Vec<String> = b
                .get("relations")
                .map(|e| e.pieces(',').into_iter().map(|p| p.0).collect())
                .unwrap_or_default();
            let ring = GradedPolyRing::from_parts(&self.ws.field, &gens, &rels)
                .map_err(|err| b.at(core_message(&err)))?;
            let group = match b.get("group") {
                Some(e) => {
                    let orders: Vec<u32> = parse_ints(e)?
                        .into_iter()
                        .map(|o| o.max(0) as u32)
                        .collect();
                    Some(
                        GroupData::new(&self.ws.field, &orders)
                            .map_err(|err| e.at(core_message(&err)))?,
                    )
                }
                None => None,
            };
            CohomologyEntry {
                presentation: CohomologyPresentation::user(&name, &ring),
                group,
            }
        };
        self.ws.cohomology.insert(name, entry);
        Ok(())
    }

    fn datum_block(&mut self, b: &Block, name: String) -> Result<(), Diagnostic> {
        b.check_keys(&["subgroup", "source", "target", "images"], &[])?;
        let entry = if let Some(e) = b.get("subgroup") {
            let sub = self.lookup_subgroup(e)?;
            let d = restriction_for(&sub).map_err(|err| e.at(core_message(&err)))?;
            DatumEntry {
                source: "H*(G)".into(),
                target: format!("H*({})", e.value),
                hom: d.hom,
            }
        } else {
            let se = b.require("source")?;
            let te = b.require("target")?;
            let find = |e: &Entry| {
                self.ws
                    .cohomology
                    .get(&e.value)
                    .cloned()
                    .ok_or_else(|| e.at(format!("unknown cohomology '{}'", e.value)))
            };
            let (src, tgt) = (find(se)?, find(te)?);
            let ie = b.require("images")?;
            let images = ie
                .pieces(',')
                .into_iter()
                .map(|(s, col)| parse_poly(&tgt.presentation.ring, &s, ie.line, col))
                .collect::<Result<Vec<_>, _>>()?;
            let hom = RingHom::new(&src.presentation.ring, &tgt.presentation.ring, images)
                .map_err(|err| ie.at(core_message(&err)))?;
            DatumEntry {
                source: se.value.clone(),
                target: te.value.clone(),
                hom,
            }
        };
        self.ws.data.insert(name, entry);
        Ok(())
    }

    fn family_block(&mut self, b: &Block, name: String) -> Result<(), Diagnostic> {
        b.check_keys(&["u"], &["at "])?;
        let group = self.group(b)?;
        if !group.is_elementary() {
            return Err(b.at("[family] needs an elementary abelian group"));
        }
        let ue = b.require("u")?;
        let pres = builtin_cohomology(group.characteristic(), group.rank())
            .map_err(|err| ue.at(core_message(&err)))?;
        let u = parse_poly(&pres.ring, &ue.value, ue.line, ue.val_col)?;
        let overrides = b
            .entries
            .iter()
            .filter_map(|e| {
                e.key
                    .strip_prefix("at ")
                    .map(|label| (label.trim().to_string(), e.value.clone()))
            })
            .collect();
        self.ws.families.insert(name, FamilyEntry { u, overrides });
        Ok(())
    }
}

/// Parse and validate workspace text. Diagnostics from every block are collected.
pub fn parse_workspace_str(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    let (blocks, mut diags) = split_blocks(text);
    let mut parser = Parser {
        ws: Workspace {
            field: Field::prime(2).expect("2 is prime"),
            ext_degree: None,
            group: None,
            modules: BTreeMap::new(),
            ideals: BTreeMap::new(),
            subgroups: BTreeMap::new(),
            rings: BTreeMap::new(),
            cohomology: BTreeMap::new(),
            data: BTreeMap::new(),
            families: BTreeMap::new(),
            params: Params::default(),
        },
        defined: BTreeMap::new(),
        field_seen: false,
    };
    if !blocks.iter().any(|b| b.kind == "field") {
        diags.push(Diagnostic {
            line: 1,
            column: 1,
            message: "workspace has no [field] block".into(),
        });
    }
    for b in &blocks {
        if let Err(d) = parser.block(b) {
            diags.push(d);
        }
    }
    if diags.is_empty() {
        Ok(parser.ws)
    } else {
        diags.sort_by_key(|d| (d.line, d.column));
        Err(diags)
    }
}

pub fn parse_workspace(path: &Path) -> Result<Workspace, Vec<Diagnostic>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        vec![Diagnostic {
            line: 0,
            column: 0,
            message: format!("cannot read {}: {e}", path.display()),
        }]
    })?;
    parse_workspace_str(&text)
}

fn matrix_rows(m: &Matrix) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// A `[module]` block that re-parses to `m`.
pub fn module_block(name: &str, m: &GroupModule, over: Option<&str>) -> String {
    let mut out = format!("[module {name}]\n");
    if let Some(h) = over {
        out.push_str(&format!("over = {h}\n"));
    }
    out.push_str(&format!("dim = {}\n", m.dim()));
    for (i, g) in m.generators().iter().enumerate() {
        out.push_str(&format!("g{} = {}\n", i + 1, matrix_rows(g)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let ws = parse_workspace_str("[field] p=2\n[group] orders=2\n[module k]\nkind = trivial\n")
            .unwrap();
        assert_eq!(ws.modules["k"].module.dim(), 1);
    }

    #[test]
    fn non_commuting_pair() {
        let text = "[field] p=2\n[group] orders=2,2\n[module M]\ndim = 3\ng1 = 1 0 0; 1 1 0; 0 0 1\ng2 = 1 0 0; 0 1 0; 0 1 1\n";
        let d = parse_workspace_str(text).unwrap_err();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].line, d[0].column), (3, 1));
        assert!(d[0].message.contains("g1*g2 != g2*g1"), "{}", d[0].message);
    }

    #[test]
    fn undefined_ideal() {
        let text = "[field] p=2\n[group] orders=2,2\n[module k] kind=trivial\n[module L]\nkind = koszul\nof = k\nideal = a\n";
        let d = parse_workspace_str(text).unwrap_err();
        assert_eq!((d[0].line, d[0].column), (7, 9));
        assert!(d[0].message.contains("unknown ideal 'a'"));
    }

    #[test]
    fn locations_of_syntax_errors() {
        let d = parse_workspace_str(
            "[field] p=2\n[group] orders=2\n[ideal a]\ngens = eta1, eta9\nbogus\n",
        )
        .unwrap_err();
        assert_eq!(
            d.iter().map(|d| (d.line, d.column)).collect::<Vec<_>>(),
            vec![(4, 14), (5, 1)]
        );
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let d = parse_workspace_str(
            "[field] p=2\n[group] orders=2\n[module k] kind=trivial\n[ideal k] gens=eta1\n",
        )
        .unwrap_err();
        assert!(d[0].message.contains("already used"));
    }

    #[test]
    fn module_blocks_round_trip() {
        let ws = parse_workspace_str("[field] p=3\n[group] orders=3,3\n[module M]\nkind = shifted\nalpha = 1, 2\nlength = 2\n").unwrap();
        let m = &ws.modules["M"].module;
        let text = format!(
            "[field] p=3\n[group] orders=3,3\n{}",
            module_block("N", m, None)
        );
        let again = parse_workspace_str(&text).unwrap();
        assert_eq!(again.modules["N"].module.generators(), m.generators());
    }
}
