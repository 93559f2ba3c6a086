//! Network export and edge-list import.
//!
//! Edge list: tab-separated with header
//! `layer_from node_from layer_to node_to weight kind`, one record per stored
//! edge, 1-based indices, `kind` is `intra` or `inter`. Inter records list the
//! lower layer first.
//!
//! Supra CSV: the dense supra-adjacency matrix, row-major, no header.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{EdgeClass, MultilayerNetwork, NodeId};
use crate::error::{Error, Result};

pub const EDGE_LIST_HEADER: &str = "layer_from\tnode_from\tlayer_to\tnode_to\tweight\tkind";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExportFormat {
    #[default]
    EdgeList,
    SupraCsv,
    GraphMl,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::EdgeList => "tsv",
            ExportFormat::SupraCsv => "csv",
            ExportFormat::GraphMl => "graphml",
        }
    }
}

impl std::fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExportFormat::EdgeList => "edge-list",
            ExportFormat::SupraCsv => "supra-csv",
            ExportFormat::GraphMl => "graphml",
        })
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "tsv" => Ok(ExportFormat::EdgeList),
            "supra-csv" | "supra" => Ok(ExportFormat::SupraCsv),
            "graphml" => Ok(ExportFormat::GraphMl),
            _ => Err(Error::domain(format!(
                "unknown export format {s:?}; expected edge-list, supra-csv or graphml"
            ))),
        }
    }
}

pub fn export(net: &MultilayerNetwork, format: ExportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let res = match format {
        ExportFormat::EdgeList => write_edge_list(net, &mut out),
        ExportFormat::SupraCsv => write_supra_csv(net, &mut out),
        ExportFormat::GraphMl => write_graphml(net, &mut out),
    };
    res.and_then(|()| out.flush().map_err(Into::into))
        .map_err(|e| match e {
            Error::Stream(source) => Error::io(path, source),
            other => other,
        })
}

fn records(net: &MultilayerNetwork) -> impl Iterator<Item = (NodeId, NodeId, u64, EdgeClass)> + '_ {
    let intra = (1..=net.layers()).flat_map(move |l| {
        net.intra_edges(l)
            .map(move |(i, j, w)| (NodeId::new(l, i), NodeId::new(l, j), w, EdgeClass::Intra))
    });
    let inter = net.layer_pairs().flat_map(move |(a, b)| {
        net.inter_edges(a, b)
            .map(move |(i, j, w)| (NodeId::new(a, i), NodeId::new(b, j), w, EdgeClass::Inter))
    });
    intra.chain(inter)
}

pub fn write_edge_list<W: Write>(net: &MultilayerNetwork, mut out: W) -> Result<()> {
    writeln!(out, "{EDGE_LIST_HEADER}")?;
    for (from, to, w, class) in records(net) {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            from.layer,
            from.node,
            to.layer,
            to.node,
            w,
            class.as_str()
        )?;
    }
    Ok(())
}

pub fn write_supra_csv<W: Write>(net: &MultilayerNetwork, mut out: W) -> Result<()> {
    let a = net.supra_adjacency()?;
    for r in 0..a.nrows() {
        let row: Vec<String> = (0..a.ncols()).map(|c| a[(r, c)].to_string()).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_graphml<W: Write>(net: &MultilayerNetwork, mut out: W) -> Result<()> {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(out, r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#)?;
    writeln!(out, r#"  <key id="layer" for="node" attr.name="layer" attr.type="int"/>"#)?;
    writeln!(out, r#"  <key id="quantile" for="node" attr.name="quantile" attr.type="int"/>"#)?;
    writeln!(out, r#"  <key id="weight" for="edge" attr.name="weight" attr.type="long"/>"#)?;
    writeln!(out, r#"  <key id="class" for="edge" attr.name="class" attr.type="string"/>"#)?;
    writeln!(out, r#"  <graph id="G" edgedefault="directed">"#)?;
    let id = |n: NodeId| format!("l{}q{}", n.layer, n.node);
    for layer in 1..=net.layers() {
        for node in 1..=net.nodes_per_layer() {
            let n = NodeId::new(layer, node);
            writeln!(
                out,
                r#"    <node id="{}"><data key="layer">{layer}</data><data key="quantile">{node}</data></node>"#,
                id(n)
            )?;
        }
    }
    for (from, to, w, class) in records(net) {
        let directed = if class == EdgeClass::Inter { r#" directed="false""# } else { "" };
        writeln!(
            out,
            r#"    <edge source="{}" target="{}"{directed}><data key="weight">{w}</data><data key="class">{}</data></edge>"#,
            id(from),
            id(to),
            class.as_str()
        )?;
    }
    writeln!(out, "  </graph>")?;
    writeln!(out, "</graphml>")?;
    Ok(())
}

/// Parses an edge list into an `layers × nodes_per_layer` network.
pub fn read_edge_list<R: Read>(input: R, layers: usize, nodes_per_layer: usize) -> Result<MultilayerNetwork> {
    let mut net = MultilayerNetwork::new(layers, nodes_per_layer)?;
    let mut lines = BufReader::new(input).lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == EDGE_LIST_HEADER => {}
        Some(Ok(h)) => return Err(Error::Structure(format!("unexpected edge-list header {h:?}"))),
        Some(Err(e)) => return Err(e.into()),
        None => return Err(Error::Structure("empty edge-list file".into())),
    }
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let row = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != 6 {
            return Err(Error::Structure(format!("row {row} has {} fields, expected 6", cells.len())));
        }
        let num = |col: usize| -> Result<u64> {
            cells[col].trim().parse().map_err(|_| Error::Parse {
                row,
                column: col + 1,
                message: format!("not a non-negative integer: {:?}", cells[col]),
            })
        };
        let from = NodeId::new(num(0)? as usize, num(1)? as usize);
        let to = NodeId::new(num(2)? as usize, num(3)? as usize);
        let weight = num(4)?;
        let class_ok = match cells[5].trim() {
            "intra" => from.layer == to.layer,
            "inter" => from.layer != to.layer,
            other => {
                return Err(Error::Parse {
                    row,
                    column: 6,
                    message: format!("unknown edge kind {other:?}"),
                })
            }
        };
        if !class_ok {
            return Err(Error::Structure(format!("row {row}: edge kind does not match its layers")));
        }
        net.add_or_increment_edge(from, to, weight)?;
    }
    Ok(net)
}

pub fn import_edge_list(path: impl AsRef<Path>, layers: usize, nodes_per_layer: usize) -> Result<MultilayerNetwork> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(file, layers, nodes_per_layer).map_err(|e| match e {
        Error::Stream(source) => Error::io(path, source),
        other => other,
    })
}
