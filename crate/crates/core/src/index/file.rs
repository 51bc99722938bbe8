//! Binary index file.
//!
//! All integers and floats are little-endian.
//!
//! ```text
//! magic    6 bytes  "S2SIDX"
//! version  u16      1
//! metric   u8       0 = cosine, 1 = l2
//! dim      u32      E
//! n        u64      total records
//! nlist    u32      IVF cells; 0 marks a flat index
//! centroids         nlist * E f32
//! lists             max(nlist, 1) times:
//!   count  u64
//!   count times: id_len u32, id (UTF-8), E f32
//! ```

use std::collections::HashSet;
use std::io::{Read, Write};

use super::{validate_loaded, FlatIndex, IvfIndex, Metric, Records, VectorIndex};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 6] = b"S2SIDX";
pub const FORMAT_VERSION: u16 = 1;

fn metric_code(m: Metric) -> u8 {
    match m {
        Metric::Cosine => 0,
        Metric::L2 => 1,
    }
}

fn write_list<W: Write>(out: &mut W, list: &Records, dim: usize) -> Result<()> {
    out.write_all(&(list.len() as u64).to_le_bytes())?;
    for i in 0..list.len() {
        let id = list.ids[i].as_bytes();
        let len =
            u32::try_from(id.len()).map_err(|_| Error::Format("record id too long".into()))?;
        out.write_all(&len.to_le_bytes())?;
        out.write_all(id)?;
        for x in list.vector(i, dim) {
            out.write_all(&x.to_le_bytes())?;
        }
    }
    Ok(())
}

impl VectorIndex {
    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        let (metric, dim) = (self.metric(), self.dim());
        out.write_all(MAGIC)?;
        out.write_all(&FORMAT_VERSION.to_le_bytes())?;
        out.write_all(&[metric_code(metric)])?;
        out.write_all(&(dim as u32).to_le_bytes())?;
        out.write_all(&(self.len() as u64).to_le_bytes())?;
        out.write_all(&(self.nlist() as u32).to_le_bytes())?;
        match self {
            VectorIndex::Flat(f) => write_list(&mut out, &f.records, dim)?,
            VectorIndex::Ivf(ivf) => {
                for x in ivf.centroid_values() {
                    out.write_all(&x.to_le_bytes())?;
                }
                for list in ivf.lists() {
                    write_list(&mut out, list, dim)?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.save(&mut buf).expect("writing to memory");
        buf
    }

    pub fn load<R: Read>(mut source: R) -> Result<Self> {
        let mut bytes = Vec::new();
        source.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(6)? != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u16::from_le_bytes(r.array()?);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let metric = match r.array::<1>()?[0] {
            0 => Metric::Cosine,
            1 => Metric::L2,
            other => return Err(Error::Format(format!("unknown metric code {other}"))),
        };
        let dim = u32::from_le_bytes(r.array()?) as usize;
        let n = u64::from_le_bytes(r.array()?);
        let nlist = u32::from_le_bytes(r.array()?) as usize;
        if dim == 0 {
            return Err(Error::Format("zero dimension".into()));
        }

        let centroids = r.floats(
            nlist
                .checked_mul(dim)
                .ok_or_else(|| Error::Format("header overflow".into()))?,
        )?;
        let mut lists = Vec::with_capacity(nlist.max(1));
        let mut seen = HashSet::new();
        let mut total = 0u64;
        for _ in 0..nlist.max(1) {
            let count = u64::from_le_bytes(r.array()?);
            total = total.saturating_add(count);
            if total > n {
                return Err(Error::Format(
                    "posting lists exceed the record count".into(),
                ));
            }
            let mut list = Records::default();
            for _ in 0..count {
                let len = u32::from_le_bytes(r.array()?) as usize;
                let id = std::str::from_utf8(r.take(len)?)
                    .map_err(|_| Error::Format("record id is not UTF-8".into()))?
                    .to_string();
                if !seen.insert(id.clone()) {
                    return Err(Error::Format(format!("duplicate record id {id:?}")));
                }
                let v = r.floats(dim)?;
                validate_loaded(&id, &v, metric)?;
                list.push(id, &v);
            }
            lists.push(list);
        }
        if total != n {
            return Err(Error::Format(format!(
                "header declares {n} records, found {total}"
            )));
        }
        if r.pos != bytes.len() {
            return Err(Error::Format("trailing bytes after the last record".into()));
        }

        Ok(if nlist == 0 {
            let records = lists.pop().expect("one list");
            if records.len() == 0 {
                return Err(Error::Format("flat index has no records".into()));
            }
            VectorIndex::Flat(FlatIndex {
                metric,
                dim,
                records,
            })
        } else {
            VectorIndex::Ivf(IvfIndex::from_parts(metric, dim, centroids, lists))
        })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Format("unexpected end of file".into()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    fn floats(&mut self, count: usize) -> Result<Vec<f32>> {
        let raw = self.take(
            count
                .checked_mul(4)
                .ok_or_else(|| Error::Format("length overflow".into()))?,
        )?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().expect("4 bytes")))
            .collect())
    }
}
