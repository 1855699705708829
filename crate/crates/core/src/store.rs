//! On-disk modules and isomorphism witnesses. A file is a sequence of
//! sections followed by a little-endian CRC-32 of everything before it. A
//! module section is one JSON header line and the generator matrices in the
//! binary matrix framing.

use std::io::{Cursor, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::Mat;
use crate::modules::{intertwines, AlgebraId, GenLabel, ModAction};

pub const STORE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    p: u32,
    dim: usize,
    algebra: AlgebraId,
    labels: Vec<GenLabel>,
}

fn encode_module(m: &ModAction, out: &mut Vec<u8>) -> Result<()> {
    let header = Header {
        format: "spf-module".into(),
        version: STORE_FORMAT_VERSION,
        p: m.prime(),
        dim: m.dim(),
        algebra: m.algebra().clone(),
        labels: m.gens().iter().map(|(l, _)| l.clone()).collect(),
    };
    serde_json::to_writer(&mut *out, &header)?;
    out.push(b'\n');
    for g in m.gen_mats() {
        g.write_binary(out)?;
    }
    Ok(())
}

fn decode_module(r: &mut Cursor<&[u8]>) -> Result<ModAction> {
    let mut line = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        r.read_exact(&mut byte)
            .map_err(|_| Error::Format("truncated module header".into()))?;
        if byte[0] == b'\n' {
            break;
        }
        line.push(byte[0]);
    }
    let header: Header = serde_json::from_slice(&line)?;
    if header.format != "spf-module" || header.version != STORE_FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported module section {} v{}",
            header.format, header.version
        )));
    }
    let mut gens = Vec::with_capacity(header.labels.len());
    for label in header.labels {
        let g = Mat::read_binary(r)?;
        if g.rows() != header.dim || g.cols() != header.dim || g.prime() != header.p {
            return Err(Error::Format(format!("generator {label} has the wrong shape")));
        }
        gens.push((label, g));
    }
    ModAction::new(header.p, header.dim, gens, header.algebra)
}

fn seal(mut payload: Vec<u8>) -> Vec<u8> {
    let crc = crc32fast::hash(&payload);
    payload.extend_from_slice(&crc.to_le_bytes());
    payload
}

fn unseal(bytes: &[u8]) -> Result<&[u8]> {
    if bytes.len() < 4 {
        return Err(Error::Format("file too short".into()));
    }
    let (payload, tail) = bytes.split_at(bytes.len() - 4);
    let want = u32::from_le_bytes(tail.try_into().expect("4 bytes"));
    if crc32fast::hash(payload) != want {
        return Err(Error::Format("checksum mismatch".into()));
    }
    Ok(payload)
}

pub fn write_module<W: Write>(m: &ModAction, w: &mut W) -> Result<()> {
    let mut out = Vec::new();
    encode_module(m, &mut out)?;
    w.write_all(&seal(out))?;
    Ok(())
}

pub fn read_module<R: Read>(r: &mut R) -> Result<ModAction> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let payload = unseal(&bytes)?;
    let mut cur = Cursor::new(payload);
    let m = decode_module(&mut cur)?;
    if cur.position() as usize != payload.len() {
        return Err(Error::Format("trailing bytes after module".into()));
    }
    Ok(m)
}

/// An invertible intertwiner `lhs → rhs` together with both modules.
#[derive(Clone, Debug)]
pub struct Witness {
    pub lhs: ModAction,
    pub rhs: ModAction,
    pub map: Mat,
}

impl Witness {
    pub fn validate(&self) -> bool {
        self.lhs.same_algebra(&self.rhs).is_ok()
            && self.map.rows() == self.rhs.dim()
            && self.map.cols() == self.lhs.dim()
            && self.map.is_invertible()
            && intertwines(&self.lhs, &self.rhs, &self.map)
    }
}

pub fn write_witness<W: Write>(wit: &Witness, w: &mut W) -> Result<()> {
    let mut out = Vec::new();
    encode_module(&wit.lhs, &mut out)?;
    encode_module(&wit.rhs, &mut out)?;
    wit.map.write_binary(&mut out)?;
    w.write_all(&seal(out))?;
    Ok(())
}

/// Reads a witness and re-checks that it is an invertible intertwiner.
pub fn read_witness<R: Read>(r: &mut R) -> Result<Witness> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let payload = unseal(&bytes)?;
    let mut cur = Cursor::new(payload);
    let lhs = decode_module(&mut cur)?;
    let rhs = decode_module(&mut cur)?;
    let map = Mat::read_binary(&mut cur)?;
    let wit = Witness { lhs, rhs, map };
    if !wit.validate() {
        return Err(Error::Format("witness does not intertwine".into()));
    }
    Ok(wit)
}

pub fn save_witness(wit: &Witness, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    write_witness(wit, &mut f)
}

pub fn load_witness(path: &Path) -> Result<Witness> {
    read_witness(&mut std::fs::File::open(path)?)
}
