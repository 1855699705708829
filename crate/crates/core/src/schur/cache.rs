//! On-disk structure constants: one JSON header line, then little-endian
//! `u32` quadruples `(i, j, k, value)` meaning `b_i b_j ∋ value·b_k`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::SchurAlg;
use crate::error::{Error, Result};

pub const SCHUR_FORMAT_VERSION: u32 = 1;
const MAX_FULL_TABLE_DIM: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub version: u32,
    pub p: u32,
    pub n: usize,
    pub d: usize,
    pub dim: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub header: Header,
    pub triples: Vec<[u32; 4]>,
}

impl SchurAlg {
    /// All nonzero structure constants; refused above dimension 1000.
    pub fn structure_constants(&self) -> Result<StructureConstants> {
        let dim = self.dim();
        if dim > MAX_FULL_TABLE_DIM {
            return Err(Error::SizeGuard(format!(
                "full structure constants of S({},{}) (dim {dim}); products are computed on demand instead",
                self.n, self.d
            )));
        }
        let mut triples = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for &(k, c) in self.product(i, j).iter() {
                    triples.push([i as u32, j as u32, k as u32, c]);
                }
            }
        }
        Ok(StructureConstants {
            header: Header {
                format: "spf-schur".into(),
                version: SCHUR_FORMAT_VERSION,
                p: self.p,
                n: self.n,
                d: self.d,
                dim,
                count: triples.len(),
            },
            triples,
        })
    }
}

pub fn write_structure_constants<W: Write>(sc: &StructureConstants, w: &mut W) -> Result<()> {
    serde_json::to_writer(&mut *w, &sc.header)?;
    w.write_all(b"\n")?;
    for t in &sc.triples {
        for x in t {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_structure_constants<R: BufRead>(r: &mut R) -> Result<StructureConstants> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header: Header = serde_json::from_str(line.trim_end())?;
    if header.format != "spf-schur" || header.version != SCHUR_FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported structure-constant file {} v{}",
            header.format, header.version
        )));
    }
    let mut triples = Vec::with_capacity(header.count);
    let mut buf = [0u8; 16];
    for _ in 0..header.count {
        r.read_exact(&mut buf)
            .map_err(|_| Error::Format("truncated structure-constant file".into()))?;
        let mut t = [0u32; 4];
        for (k, x) in t.iter_mut().enumerate() {
            *x = u32::from_le_bytes(buf[4 * k..4 * k + 4].try_into().expect("4 bytes"));
        }
        if t[0] as usize >= header.dim || t[1] as usize >= header.dim || t[2] as usize >= header.dim || t[3] >= header.p {
            return Err(Error::Format(format!("entry {t:?} out of range")));
        }
        triples.push(t);
    }
    Ok(StructureConstants { header, triples })
}
