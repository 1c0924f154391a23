//! On-disk partition cache.
//!
//! One file per `(format version, n, canonical pattern-set string)` holding
//! the canonical root array. Writes go through a temp file in the same
//! directory followed by a rename, so concurrent writers cannot leave a
//! half-written entry behind.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use crate::engine::ClassPartition;
use crate::error::{Error, Result};
use crate::pattern::PatternSet;
use crate::perm::FACTORIAL;

const MAGIC: &[u8; 4] = b"PRMQ";
pub const FORMAT_VERSION: u32 = 1;

/// File name for a partition entry; commas become dashes to stay
/// filesystem-friendly.
pub fn cache_file_name(n: usize, patterns: &PatternSet) -> String {
    format!(
        "v{FORMAT_VERSION}-n{n}-{}.roots",
        patterns.canonical_string().replace(',', "-")
    )
}

pub fn cache_path(dir: &Path, n: usize, patterns: &PatternSet) -> PathBuf {
    dir.join(cache_file_name(n, patterns))
}

/// Writes the partition's root array, atomically. Returns the final path.
pub fn write_partition(dir: &Path, partition: &ClassPartition) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = cache_path(dir, partition.n(), partition.patterns());
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        w.write_all(MAGIC)?;
        w.write_u32::<LittleEndian>(FORMAT_VERSION)?;
        w.write_u32::<LittleEndian>(partition.n() as u32)?;
        let key = partition.patterns().canonical_string();
        w.write_u32::<LittleEndian>(key.len() as u32)?;
        w.write_all(key.as_bytes())?;
        w.write_u64::<LittleEndian>(partition.roots().len() as u64)?;
        for &root in partition.roots() {
            w.write_u32::<LittleEndian>(root)?;
        }
        w.flush()?;
    }
    tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
    Ok(path)
}

/// Loads a cached partition. `Ok(None)` when no entry exists; an error when
/// an entry exists but does not match the requested key or fails validation.
pub fn read_partition(dir: &Path, n: usize, patterns: &PatternSet) -> Result<Option<ClassPartition>> {
    let path = cache_path(dir, n, patterns);
    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let corrupt = |what: &str| {
        Error::InvalidInput(format!("cache entry {} is invalid: {what}", path.display()))
    };
    let mut r = BufReader::new(file);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(|_| corrupt("truncated header"))?;
    if &magic != MAGIC {
        return Err(corrupt("bad magic"));
    }
    if r.read_u32::<LittleEndian>()? != FORMAT_VERSION {
        return Err(corrupt("format version mismatch"));
    }
    if r.read_u32::<LittleEndian>()? as usize != n {
        return Err(corrupt("length mismatch"));
    }
    let key_len = r.read_u32::<LittleEndian>()? as usize;
    let mut key = vec![0u8; key_len];
    r.read_exact(&mut key).map_err(|_| corrupt("truncated pattern key"))?;
    if key != patterns.canonical_string().as_bytes() {
        return Err(corrupt("pattern set mismatch"));
    }
    let count = r.read_u64::<LittleEndian>()? as usize;
    if count != FACTORIAL[n] {
        return Err(corrupt("root count mismatch"));
    }
    let mut roots = vec![0u32; count];
    r.read_u32_into::<LittleEndian>(&mut roots)
        .map_err(|_| corrupt("truncated root array"))?;
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing)? != 0 {
        return Err(corrupt("trailing bytes"));
    }
    ClassPartition::from_canonical_roots(n, patterns.clone(), roots).map(Some)
}
