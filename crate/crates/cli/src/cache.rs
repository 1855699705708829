//! On-disk cache of realized modules, structure constants and witnesses,
//! keyed by `(p, n, d, expression hash, code version)`.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use spf_core::modules::ModAction;
use spf_core::schur::{read_structure_constants, write_structure_constants, StructureConstants};
use spf_core::store::{read_module, save_witness, write_module, Witness};
use spf_core::Result;

pub const CACHE_VERSION: &str = concat!("v", env!("CARGO_PKG_VERSION"));

pub struct Cache {
    root: PathBuf,
}

fn hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

impl Cache {
    pub fn open(root: &Path) -> Result<Cache> {
        fs::create_dir_all(root.join("witnesses"))?;
        Ok(Cache { root: root.to_path_buf() })
    }

    fn module_path(&self, p: u32, n: usize, d: usize, expr: &str) -> PathBuf {
        self.root
            .join(format!("mod-p{p}-n{n}-d{d}-{}-{CACHE_VERSION}.bin", hash(expr)))
    }

    /// A cached module, or `None` on a miss. Corrupt files are reported and
    /// treated as misses.
    pub fn load_module(&self, p: u32, n: usize, d: usize, expr: &str) -> Option<ModAction> {
        let path = self.module_path(p, n, d, expr);
        let file = fs::File::open(&path).ok()?;
        match read_module(&mut BufReader::new(file)) {
            Ok(m) => Some(m),
            Err(e) => {
                eprintln!("warning: ignoring cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store_module(&self, p: u32, n: usize, d: usize, expr: &str, m: &ModAction) -> Result<()> {
        let mut f = fs::File::create(self.module_path(p, n, d, expr))?;
        write_module(m, &mut f)
    }

    fn schur_path(&self, p: u32, n: usize, d: usize) -> PathBuf {
        self.root.join(format!("schur-p{p}-n{n}-d{d}-{CACHE_VERSION}.bin"))
    }

    pub fn load_schur(&self, p: u32, n: usize, d: usize) -> Option<StructureConstants> {
        let path = self.schur_path(p, n, d);
        let file = fs::File::open(&path).ok()?;
        match read_structure_constants(&mut BufReader::new(file)) {
            Ok(sc) => Some(sc),
            Err(e) => {
                eprintln!("warning: ignoring cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store_schur(&self, sc: &StructureConstants) -> Result<()> {
        let h = &sc.header;
        let mut f = fs::File::create(self.schur_path(h.p, h.n, h.d))?;
        write_structure_constants(sc, &mut f)
    }

    /// Writes a witness and returns its path relative to the cache root.
    pub fn store_witness(&self, id: &str, p: u32, n: usize, d: usize, w: &Witness) -> Result<String> {
        let rel = format!("witnesses/{}-p{p}-n{n}-d{d}-{CACHE_VERSION}.wit", sanitize(id));
        save_witness(w, &self.root.join(&rel))?;
        Ok(rel)
    }
}
