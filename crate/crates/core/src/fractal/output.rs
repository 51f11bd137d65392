//! Netpbm and CSV encodings of an [`EscapeGrid`].

use std::io::{self, Write};

use super::EscapeGrid;

impl EscapeGrid {
    /// `min(max_iter, 65535)`, floored at 1 so the header stays valid.
    pub fn pgm_maxval(&self) -> u32 {
        self.config.max_iter.clamp(1, 65535)
    }

    /// Binary `P5`. Samples are counts clamped to maxval; one byte each when
    /// maxval ≤ 255, otherwise two bytes big-endian.
    pub fn write_pgm<W: Write>(&self, mut w: W) -> io::Result<()> {
        let maxval = self.pgm_maxval();
        write!(w, "P5\n{} {}\n{}\n", self.width(), self.height(), maxval)?;
        let wide = maxval > 255;
        let mut buf = Vec::with_capacity(self.counts.len() * if wide { 2 } else { 1 });
        for &n in &self.counts {
            let v = n.min(maxval);
            if wide {
                buf.extend_from_slice(&(v as u16).to_be_bytes());
            } else {
                buf.push(v as u8);
            }
        }
        w.write_all(&buf)
    }

    /// Binary `P6`, grey level `255·count/max_iter` (integer division) in all
    /// three channels.
    pub fn write_ppm<W: Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "P6\n{} {}\n255\n", self.width(), self.height())?;
        let max_iter = u64::from(self.config.max_iter);
        let mut buf = Vec::with_capacity(self.counts.len() * 3);
        for &n in &self.counts {
            let grey = (255 * u64::from(n).min(max_iter))
                .checked_div(max_iter)
                .unwrap_or(0) as u8;
            buf.extend_from_slice(&[grey; 3]);
        }
        w.write_all(&buf)
    }

    /// Header `i,j,count`, one row per pixel in raster order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "i,j,count")?;
        for j in 0..self.height() {
            for i in 0..self.width() {
                writeln!(w, "{},{},{}", i, j, self.get(i, j))?;
            }
        }
        Ok(())
    }

    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_pgm(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_ppm(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("csv is ascii")
    }
}
