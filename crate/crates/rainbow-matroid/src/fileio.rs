//! Instance, certificate, and label-map files.
//!
//! Every file is a canonical UTF-8 text document: a `format = ...` magic
//! line followed by `key = value` lines in natural key order (sections
//! alphabetical, numeric id suffixes ascending). Ids are strings such as
//! `v3`, `e12`, `a7`, `x0`; writing the result of a parse reproduces a
//! canonical file byte for byte. See docs/FORMAT.md for the frozen field
//! reference.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::iter::Peekable;
use std::path::Path;
use std::str::Chars;

use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, EdgeId, Multigraph, VertexId};
use crate::matroid::{ElemSet, ElementId};
use crate::partition::Partition;
use crate::reductions::{GadgetLabels, LabelId, Nae3SatInstance};

const INSTANCE_MAGIC: &str = "rmi/1";
const CERTIFICATE_MAGIC: &str = "rmc/1";
const LABELS_MAGIC: &str = "rml/1";

/// A parsed instance document.
#[derive(Debug, Clone)]
pub enum InstanceFile {
    Graph { graph: Multigraph },
    Digraph { digraph: Digraph },
    Nae3Sat { instance: Nae3SatInstance },
    KCol { graph: Multigraph, k: usize },
    Rstkf { graph: Multigraph, partition: Partition, k: usize },
    Bstkf { digraph: Digraph, bounds: Vec<u32>, k: usize },
}

/// A parsed certificate document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateFile {
    Trees(Vec<BTreeSet<EdgeId>>),
    Subgraphs(Vec<BTreeSet<ArcId>>),
    Assignment(Vec<bool>),
    Coloring(Vec<usize>),
    /// Element sets with their basis flags.
    Cover(Vec<(ElemSet, bool)>),
}

fn take_number(it: &mut Peekable<Chars>) -> u64 {
    let mut n = 0u64;
    while let Some(c) = it.peek().copied().filter(char::is_ascii_digit) {
        n = n.saturating_mul(10).saturating_add(c as u64 - '0' as u64);
        it.next();
    }
    n
}

/// Key order of canonical documents: character runs compare as text,
/// digit runs compare as numbers, so `e9` sorts before `e10`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut ai = a.chars().peekable();
    let mut bi = b.chars().peekable();
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                match take_number(&mut ai).cmp(&take_number(&mut bi)) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
            (Some(x), Some(y)) => match x.cmp(&y) {
                Ordering::Equal => {
                    ai.next();
                    bi.next();
                }
                other => return other,
            },
        }
    }
}

struct DocBuilder {
    magic: &'static str,
    lines: Vec<(String, String)>,
}

impl DocBuilder {
    fn new(magic: &'static str) -> Self {
        DocBuilder { magic, lines: Vec::new() }
    }

    fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let (key, value) = (key.into(), value.into());
        debug_assert!(!key.contains('=') && !value.starts_with(' '));
        self.lines.push((key, value));
    }

    fn finish(mut self) -> String {
        self.lines.sort_by(|(a, _), (b, _)| natural_cmp(a, b));
        let mut out = format!("format = {}\n", self.magic);
        for (key, value) in &self.lines {
            if value.is_empty() {
                out.push_str(&format!("{key} =\n"));
            } else {
                out.push_str(&format!("{key} = {value}\n"));
            }
        }
        out
    }
}

fn join_ids(prefix: char, ids: impl IntoIterator<Item = u32>) -> String {
    ids.into_iter().map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().join(" ")
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// One parsed `key = value` line; sectioned keys carry their id.
struct Line {
    no: usize,
    section: String,
    id: Option<String>,
    value: String,
}

struct Doc {
    magic: String,
    lines: Vec<Line>,
}

fn parse_doc(text: &str) -> Result<Doc> {
    let mut lines = Vec::new();
    let mut magic = None;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let pos = raw
            .find(" =")
            .ok_or_else(|| parse_err(no, "expected a `key = value` line"))?;
        let key = &raw[..pos];
        let rest = &raw[pos + 2..];
        let value = rest.strip_prefix(' ').unwrap_or(rest).to_string();
        if key.is_empty() {
            return Err(parse_err(no, "empty key"));
        }
        let mut words = key.split_whitespace();
        let section = words.next().unwrap().to_string();
        let id = words.next().map(str::to_string);
        if words.next().is_some() {
            return Err(parse_err(no, format!("key `{key}` has too many words")));
        }
        if magic.is_none() {
            if section != "format" || id.is_some() {
                return Err(parse_err(no, "first line must be `format = ...`"));
            }
            magic = Some(value);
            continue;
        }
        if section == "format" {
            return Err(parse_err(no, "duplicate format line"));
        }
        lines.push(Line { no, section, id, value });
    }
    let magic = magic.ok_or_else(|| parse_err(1, "empty document"))?;
    Ok(Doc { magic, lines })
}

impl Doc {
    /// The unique unindexed value for `key`.
    fn scalar(&self, key: &str) -> Result<(usize, &str)> {
        let mut found = None;
        for l in &self.lines {
            if l.section == key && l.id.is_none() {
                if found.is_some() {
                    return Err(parse_err(l.no, format!("duplicate key `{key}`")));
                }
                found = Some((l.no, l.value.as_str()));
            }
        }
        found.ok_or_else(|| parse_err(0, format!("missing key `{key}`")))
    }

    fn scalar_usize(&self, key: &str) -> Result<usize> {
        let (no, v) = self.scalar(key)?;
        v.parse().map_err(|_| parse_err(no, format!("`{key}` must be a number, got `{v}`")))
    }

    /// All `section <id> = value` lines as a dense id-indexed list: ids
    /// must be `prefix0..prefixN` with no gaps or repeats.
    fn section(&self, section: &str, prefix: char) -> Result<Vec<(usize, &str)>> {
        let mut by_index: BTreeMap<u32, (usize, &str)> = BTreeMap::new();
        for l in &self.lines {
            if l.section != section {
                continue;
            }
            let id = l
                .id
                .as_deref()
                .ok_or_else(|| parse_err(l.no, format!("`{section}` lines need an id")))?;
            let idx = parse_id(l.no, id, prefix)?;
            if by_index.insert(idx, (l.no, l.value.as_str())).is_some() {
                return Err(parse_err(l.no, format!("duplicate id `{id}`")));
            }
        }
        let mut out = Vec::with_capacity(by_index.len());
        for (want, (idx, entry)) in by_index.into_iter().enumerate() {
            if idx != want as u32 {
                return Err(parse_err(
                    entry.0,
                    format!("`{section}` ids must be dense, missing {prefix}{want}"),
                ));
            }
            out.push(entry);
        }
        Ok(out)
    }

    fn known_sections(&self, allowed: &[&str]) -> Result<()> {
        for l in &self.lines {
            if !allowed.contains(&l.section.as_str()) {
                return Err(parse_err(l.no, format!("unknown key `{}`", l.section)));
            }
        }
        Ok(())
    }
}

fn parse_id(no: usize, token: &str, prefix: char) -> Result<u32> {
    token
        .strip_prefix(prefix)
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| parse_err(no, format!("expected id like `{prefix}0`, got `{token}`")))
}

fn parse_id_list(no: usize, value: &str, prefix: char) -> Result<Vec<u32>> {
    value.split_whitespace().map(|t| parse_id(no, t, prefix)).collect()
}

fn parse_endpoint_pair(no: usize, value: &str) -> Result<(VertexId, VertexId)> {
    let ids = parse_id_list(no, value, 'v')?;
    if let [u, v] = ids[..] {
        Ok((VertexId(u), VertexId(v)))
    } else {
        Err(parse_err(no, format!("expected two vertices, got {}", ids.len())))
    }
}

fn graph_lines(g: &Multigraph) -> Vec<(String, String)> {
    let mut lines = vec![("vertices".to_string(), g.vertex_count().to_string())];
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        lines.push((format!("edge e{}", e.0), format!("v{} v{}", u.0, v.0)));
    }
    lines
}

fn parse_graph(doc: &Doc) -> Result<Multigraph> {
    let n = doc.scalar_usize("vertices")?;
    let mut g = Multigraph::with_vertices(n);
    for (no, value) in doc.section("edge", 'e')? {
        let (u, v) = parse_endpoint_pair(no, value)?;
        g.add_edge(u, v).map_err(|e| parse_err(no, e.to_string()))?;
    }
    Ok(g)
}

fn parse_digraph(doc: &Doc) -> Result<Digraph> {
    let n = doc.scalar_usize("vertices")?;
    let mut d = Digraph::with_vertices(n);
    for (no, value) in doc.section("arc", 'a')? {
        let (t, h) = parse_endpoint_pair(no, value)?;
        d.add_arc(t, h).map_err(|e| parse_err(no, e.to_string()))?;
    }
    Ok(d)
}

fn parse_partition(doc: &Doc, m: usize) -> Result<Partition> {
    let ground: Vec<ElementId> = (0..m as u32).map(ElementId).collect();
    let mut classes = Vec::new();
    for (no, value) in doc.section("class", 'c')? {
        let ids = parse_id_list(no, value, 'e')?;
        classes.push(ids.into_iter().map(ElementId).collect());
    }
    Partition::new(ground, classes).map_err(|e| parse_err(0, e.to_string()))
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Graph { .. } => "graph",
            InstanceFile::Digraph { .. } => "digraph",
            InstanceFile::Nae3Sat { .. } => "nae3sat",
            InstanceFile::KCol { .. } => "kcol",
            InstanceFile::Rstkf { .. } => "rstkf",
            InstanceFile::Bstkf { .. } => "bstkf",
        }
    }

    pub fn to_text(&self) -> String {
        let mut doc = DocBuilder::new(INSTANCE_MAGIC);
        doc.push("kind", self.kind());
        match self {
            InstanceFile::Graph { graph } => {
                for (k, v) in graph_lines(graph) {
                    doc.push(k, v);
                }
            }
            InstanceFile::Digraph { digraph } => {
                doc.push("vertices", digraph.vertex_count().to_string());
                for a in digraph.arc_ids() {
                    let (t, h) = digraph.arc(a);
                    doc.push(format!("arc a{}", a.0), format!("v{} v{}", t.0, h.0));
                }
            }
            InstanceFile::Nae3Sat { instance } => {
                doc.push("variables", instance.variable_count().to_string());
                for (i, clause) in instance.clauses().iter().enumerate() {
                    doc.push(format!("clause q{i}"), join_ids('x', clause.iter().copied()));
                }
            }
            InstanceFile::KCol { graph, k } => {
                doc.push("k", k.to_string());
                for (key, v) in graph_lines(graph) {
                    doc.push(key, v);
                }
            }
            InstanceFile::Rstkf { graph, partition, k } => {
                doc.push("k", k.to_string());
                for (key, v) in graph_lines(graph) {
                    doc.push(key, v);
                }
                for (i, class) in partition.classes().iter().enumerate() {
                    doc.push(
                        format!("class c{i}"),
                        join_ids('e', class.iter().map(|e| e.0)),
                    );
                }
            }
            InstanceFile::Bstkf { digraph, bounds, k } => {
                doc.push("k", k.to_string());
                doc.push("vertices", digraph.vertex_count().to_string());
                for a in digraph.arc_ids() {
                    let (t, h) = digraph.arc(a);
                    doc.push(format!("arc a{}", a.0), format!("v{} v{}", t.0, h.0));
                }
                for (v, b) in bounds.iter().enumerate() {
                    doc.push(format!("bound v{v}"), b.to_string());
                }
            }
        }
        doc.finish()
    }

    pub fn parse(text: &str) -> Result<InstanceFile> {
        let doc = parse_doc(text)?;
        if doc.magic != INSTANCE_MAGIC {
            return Err(parse_err(1, format!("expected format {INSTANCE_MAGIC}, got {}", doc.magic)));
        }
        let (kind_line, kind) = doc.scalar("kind")?;
        match kind {
            "graph" => {
                doc.known_sections(&["kind", "vertices", "edge"])?;
                Ok(InstanceFile::Graph { graph: parse_graph(&doc)? })
            }
            "digraph" => {
                doc.known_sections(&["kind", "vertices", "arc"])?;
                Ok(InstanceFile::Digraph { digraph: parse_digraph(&doc)? })
            }
            "nae3sat" => {
                doc.known_sections(&["kind", "variables", "clause"])?;
                let n = doc.scalar_usize("variables")?;
                let mut clauses = Vec::new();
                for (no, value) in doc.section("clause", 'q')? {
                    let ids = parse_id_list(no, value, 'x')?;
                    let [a, b, c] = ids[..] else {
                        return Err(parse_err(no, "clauses have exactly three variables"));
                    };
                    clauses.push([a, b, c]);
                }
                let instance = Nae3SatInstance::new(n, clauses)
                    .map_err(|e| parse_err(kind_line, e.to_string()))?;
                Ok(InstanceFile::Nae3Sat { instance })
            }
            "kcol" => {
                doc.known_sections(&["kind", "vertices", "edge", "k"])?;
                let k = doc.scalar_usize("k")?;
                Ok(InstanceFile::KCol { graph: parse_graph(&doc)?, k })
            }
            "rstkf" => {
                doc.known_sections(&["kind", "vertices", "edge", "class", "k"])?;
                let k = doc.scalar_usize("k")?;
                let graph = parse_graph(&doc)?;
                let partition = parse_partition(&doc, graph.edge_count())?;
                Ok(InstanceFile::Rstkf { graph, partition, k })
            }
            "bstkf" => {
                doc.known_sections(&["kind", "vertices", "arc", "bound", "k"])?;
                let k = doc.scalar_usize("k")?;
                let digraph = parse_digraph(&doc)?;
                let n = digraph.vertex_count();
                let bound_lines = doc.section("bound", 'v')?;
                if bound_lines.len() != n {
                    return Err(parse_err(
                        kind_line,
                        format!("{} bound lines for {n} vertices", bound_lines.len()),
                    ));
                }
                let mut bounds = Vec::with_capacity(n);
                for (no, value) in bound_lines {
                    bounds.push(value.parse().map_err(|_| {
                        parse_err(no, format!("bounds are non-negative numbers, got `{value}`"))
                    })?);
                }
                Ok(InstanceFile::Bstkf { digraph, bounds, k })
            }
            other => Err(parse_err(kind_line, format!("unknown instance kind `{other}`"))),
        }
    }
}

impl CertificateFile {
    pub fn kind(&self) -> &'static str {
        match self {
            CertificateFile::Trees(_) => "trees",
            CertificateFile::Subgraphs(_) => "subgraphs",
            CertificateFile::Assignment(_) => "assignment",
            CertificateFile::Coloring(_) => "coloring",
            CertificateFile::Cover(_) => "cover",
        }
    }

    pub fn to_text(&self) -> String {
        let mut doc = DocBuilder::new(CERTIFICATE_MAGIC);
        doc.push("kind", self.kind());
        match self {
            CertificateFile::Trees(trees) => {
                for (i, t) in trees.iter().enumerate() {
                    doc.push(format!("tree t{i}"), join_ids('e', t.iter().map(|e| e.0)));
                }
            }
            CertificateFile::Subgraphs(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    doc.push(format!("subgraph s{i}"), join_ids('a', p.iter().map(|a| a.0)));
                }
            }
            CertificateFile::Assignment(phi) => {
                for (i, v) in phi.iter().enumerate() {
                    doc.push(format!("assign x{i}"), v.to_string());
                }
            }
            CertificateFile::Coloring(colors) => {
                for (i, c) in colors.iter().enumerate() {
                    doc.push(format!("color v{i}"), c.to_string());
                }
            }
            CertificateFile::Cover(entries) => {
                for (i, (s, basis)) in entries.iter().enumerate() {
                    doc.push(format!("set s{i}"), join_ids('e', s.iter().map(|e| e.0)));
                    doc.push(format!("basis s{i}"), basis.to_string());
                }
            }
        }
        doc.finish()
    }

    pub fn parse(text: &str) -> Result<CertificateFile> {
        let doc = parse_doc(text)?;
        if doc.magic != CERTIFICATE_MAGIC {
            return Err(parse_err(
                1,
                format!("expected format {CERTIFICATE_MAGIC}, got {}", doc.magic),
            ));
        }
        let (kind_line, kind) = doc.scalar("kind")?;
        match kind {
            "trees" => {
                doc.known_sections(&["kind", "tree"])?;
                let mut trees = Vec::new();
                for (no, value) in doc.section("tree", 't')? {
                    trees.push(parse_id_list(no, value, 'e')?.into_iter().map(EdgeId).collect());
                }
                Ok(CertificateFile::Trees(trees))
            }
            "subgraphs" => {
                doc.known_sections(&["kind", "subgraph"])?;
                let mut parts = Vec::new();
                for (no, value) in doc.section("subgraph", 's')? {
                    parts.push(parse_id_list(no, value, 'a')?.into_iter().map(ArcId).collect());
                }
                Ok(CertificateFile::Subgraphs(parts))
            }
            "assignment" => {
                doc.known_sections(&["kind", "assign"])?;
                let mut phi = Vec::new();
                for (no, value) in doc.section("assign", 'x')? {
                    phi.push(value.parse().map_err(|_| {
                        parse_err(no, format!("expected true or false, got `{value}`"))
                    })?);
                }
                Ok(CertificateFile::Assignment(phi))
            }
            "coloring" => {
                doc.known_sections(&["kind", "color"])?;
                let mut colors = Vec::new();
                for (no, value) in doc.section("color", 'v')? {
                    colors.push(value.parse().map_err(|_| {
                        parse_err(no, format!("colors are positive numbers, got `{value}`"))
                    })?);
                }
                Ok(CertificateFile::Coloring(colors))
            }
            "cover" => {
                doc.known_sections(&["kind", "set", "basis"])?;
                let sets = doc.section("set", 's')?;
                let flags = doc.section("basis", 's')?;
                if sets.len() != flags.len() {
                    return Err(parse_err(
                        kind_line,
                        format!("{} sets but {} basis flags", sets.len(), flags.len()),
                    ));
                }
                let mut entries = Vec::new();
                for ((no, value), (fno, flag)) in sets.into_iter().zip(flags) {
                    let set: ElemSet =
                        parse_id_list(no, value, 'e')?.into_iter().map(ElementId).collect();
                    let basis = flag.parse().map_err(|_| {
                        parse_err(fno, format!("expected true or false, got `{flag}`"))
                    })?;
                    entries.push((set, basis));
                }
                Ok(CertificateFile::Cover(entries))
            }
            other => Err(parse_err(kind_line, format!("unknown certificate kind `{other}`"))),
        }
    }
}

/// Renders a label map to its sidecar document, mapping artifact ids back
/// to construction-level names.
pub fn labels_to_text(labels: &GadgetLabels) -> String {
    let mut doc = DocBuilder::new(LABELS_MAGIC);
    for name in labels.names() {
        let token = match labels.get(name).expect("iterating own names") {
            LabelId::Vertex(v) => format!("v{}", v.0),
            LabelId::Edge(e) => format!("e{}", e.0),
            LabelId::Arc(a) => format!("a{}", a.0),
        };
        assert!(!name.contains(char::is_whitespace), "label name `{name}` has spaces");
        doc.push(format!("label {token}"), name);
    }
    doc.finish()
}

/// Parses a label sidecar into (id token, name) pairs in document order.
pub fn parse_labels(text: &str) -> Result<Vec<(String, String)>> {
    let doc = parse_doc(text)?;
    if doc.magic != LABELS_MAGIC {
        return Err(parse_err(1, format!("expected format {LABELS_MAGIC}, got {}", doc.magic)));
    }
    let mut out = Vec::new();
    for l in &doc.lines {
        if l.section != "label" {
            return Err(parse_err(l.no, format!("unknown key `{}`", l.section)));
        }
        let id = l
            .id
            .clone()
            .ok_or_else(|| parse_err(l.no, "label lines need an id"))?;
        if l.value.is_empty() {
            return Err(parse_err(l.no, "empty label name"));
        }
        out.push((id, l.value.clone()));
    }
    Ok(out)
}

pub fn read_instance(path: &Path) -> Result<InstanceFile> {
    InstanceFile::parse(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &InstanceFile) -> Result<()> {
    Ok(std::fs::write(path, inst.to_text())?)
}

pub fn read_certificate(path: &Path) -> Result<CertificateFile> {
    CertificateFile::parse(&std::fs::read_to_string(path)?)
}

pub fn write_certificate(path: &Path, cert: &CertificateFile) -> Result<()> {
    Ok(std::fs::write(path, cert.to_text())?)
}

pub fn write_labels(path: &Path, labels: &GadgetLabels) -> Result<()> {
    Ok(std::fs::write(path, labels_to_text(labels))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{k4_matching_instance, random_rainbow_positive, wheel8_instance};
    use crate::reductions::{reduce_nae_to_grst2f, reduce_rstkf_to_bstkf};

    fn roundtrip_instance(inst: &InstanceFile) -> InstanceFile {
        let text = inst.to_text();
        let parsed = InstanceFile::parse(&text).expect("canonical text parses");
        assert_eq!(parsed.to_text(), text, "round trip must be byte identical");
        parsed
    }

    #[test]
    fn instance_kinds_round_trip() {
        let w = wheel8_instance();
        let rstkf = InstanceFile::Rstkf {
            graph: w.graph().clone(),
            partition: w.partition().clone(),
            k: w.k(),
        };
        match roundtrip_instance(&rstkf) {
            InstanceFile::Rstkf { graph, partition, k } => {
                assert_eq!(graph.edge_count(), 14);
                assert_eq!(partition.classes().len(), 7);
                assert_eq!(k, 2);
            }
            other => panic!("wrong kind {}", other.kind()),
        }

        roundtrip_instance(&InstanceFile::Graph { graph: w.graph().clone() });

        let nae = Nae3SatInstance::new(4, vec![[0, 1, 2], [1, 2, 3]]).unwrap();
        roundtrip_instance(&InstanceFile::Nae3Sat { instance: nae.clone() });

        roundtrip_instance(&InstanceFile::KCol { graph: Multigraph::complete(3), k: 3 });

        let red = reduce_rstkf_to_bstkf(&k4_matching_instance(), None).unwrap();
        let b = &red.instance;
        let file = InstanceFile::Bstkf {
            digraph: b.digraph().clone(),
            bounds: b.bounds().to_vec(),
            k: b.k(),
        };
        match roundtrip_instance(&file) {
            InstanceFile::Bstkf { digraph, bounds, k } => {
                assert_eq!(digraph.arc_count(), 24);
                assert_eq!(bounds.iter().filter(|&&b| b == 2).count(), 6);
                assert_eq!(k, 2);
            }
            other => panic!("wrong kind {}", other.kind()),
        }
        roundtrip_instance(&InstanceFile::Digraph { digraph: b.digraph().clone() });
    }

    #[test]
    fn certificate_kinds_round_trip() {
        let (_, witness) = random_rainbow_positive(5, 2, 3);
        let trees = CertificateFile::Trees(witness);
        assert_eq!(CertificateFile::parse(&trees.to_text()).unwrap(), trees);

        let subs = CertificateFile::Subgraphs(vec![
            [ArcId(0), ArcId(2)].into(),
            [ArcId(1), ArcId(3)].into(),
        ]);
        assert_eq!(CertificateFile::parse(&subs.to_text()).unwrap(), subs);

        let phi = CertificateFile::Assignment(vec![true, false, true]);
        assert_eq!(CertificateFile::parse(&phi.to_text()).unwrap(), phi);

        let colors = CertificateFile::Coloring(vec![1, 2, 1]);
        assert_eq!(CertificateFile::parse(&colors.to_text()).unwrap(), colors);

        let cover = CertificateFile::Cover(vec![
            ([ElementId(0), ElementId(1)].into(), true),
            (ElemSet::new(), false),
        ]);
        assert_eq!(CertificateFile::parse(&cover.to_text()).unwrap(), cover);
    }

    #[test]
    fn empty_parts_survive_round_trips() {
        let trees = CertificateFile::Trees(vec![BTreeSet::new(), [EdgeId(0)].into()]);
        let text = trees.to_text();
        assert!(text.contains("tree t0 =\n"));
        assert_eq!(CertificateFile::parse(&text).unwrap(), trees);
    }

    #[test]
    fn keys_sort_naturally() {
        let (inst, _) = random_rainbow_positive(7, 2, 0);
        let file = InstanceFile::Rstkf {
            graph: inst.graph().clone(),
            partition: inst.partition().clone(),
            k: 2,
        };
        let text = file.to_text();
        let keys: Vec<&str> = text
            .lines()
            .skip(1)
            .map(|l| l.split(" =").next().unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(keys, sorted);
        let e9 = keys.iter().position(|k| *k == "edge e9").unwrap();
        let e10 = keys.iter().position(|k| *k == "edge e10").unwrap();
        assert!(e9 < e10);
    }

    #[test]
    fn label_sidecars_round_trip() {
        let nae = Nae3SatInstance::new(3, vec![[0, 1, 2]]).unwrap();
        let red = reduce_nae_to_grst2f(&nae).unwrap();
        let text = labels_to_text(&red.labels);
        let parsed = parse_labels(&text).unwrap();
        assert_eq!(parsed.len(), red.labels.len());
        assert!(parsed.iter().any(|(id, name)| id == "v0" && name == "hub"));
        assert_eq!(labels_to_text(&red.labels), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: Vec<(&str, usize)> = vec![
            ("no equals sign", 1),
            ("format = rmi/1\nkind = rstkf\nk = 2\nvertices = x\n", 4),
            ("format = wrong/9\n", 1),
            ("format = rmi/1\nkind = mystery\n", 2),
            ("format = rmi/1\nkind = graph\nvertices = 2\nedge e1 = v0 v1\n", 4),
            ("format = rmi/1\nkind = graph\nvertices = 2\nedge e0 = v0 v1\nedge e0 = v0 v1\n", 5),
            ("format = rmi/1\nkind = graph\nvertices = 2\nedge e0 = v0 v9\n", 4),
            ("format = rmi/1\nkind = graph\nvertices = 2\nbogus = 1\n", 4),
        ];
        for (text, want_line) in cases {
            match InstanceFile::parse(text) {
                Err(Error::Parse { line, .. }) => {
                    assert_eq!(line, want_line, "wrong line for {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        assert!(matches!(
            InstanceFile::parse("format = rmi/1\nkind = graph\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn files_read_and_write_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("instance.rmi");
        let (inst, witness) = random_rainbow_positive(4, 2, 9);
        let file = InstanceFile::Rstkf {
            graph: inst.graph().clone(),
            partition: inst.partition().clone(),
            k: 2,
        };
        write_instance(&path, &file).unwrap();
        assert_eq!(read_instance(&path).unwrap().to_text(), file.to_text());

        let cpath = dir.path().join("certificate.rmc");
        let cert = CertificateFile::Trees(witness);
        write_certificate(&cpath, &cert).unwrap();
        assert_eq!(read_certificate(&cpath).unwrap(), cert);

        assert!(read_instance(&dir.path().join("missing.rmi")).is_err());
    }
}
