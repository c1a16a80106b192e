use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use pencil_spectrum::asymptotics::ScaledEigenvalue;
use pencil_spectrum::Spectrum;
use serde::Serialize;

/// 17 significant digits, enough for a lossless binary64 round trip.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn open_out(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectrumRow {
    pub re: f64,
    pub im: f64,
    pub re_scaled: f64,
    pub im_scaled: f64,
    pub multiplicity: usize,
    pub is_real: bool,
    pub residual: f64,
}

pub fn spectrum_rows(spectrum: &Spectrum) -> Vec<SpectrumRow> {
    let size = spectrum.spec.size();
    spectrum
        .eigenvalues
        .iter()
        .map(|e| {
            let s = ScaledEigenvalue::from_lambda(e.value, size);
            SpectrumRow {
                re: e.value.re,
                im: e.value.im,
                re_scaled: s.u,
                im_scaled: s.v,
                multiplicity: e.algebraic_multiplicity,
                is_real: e.is_real,
                residual: e.residual,
            }
        })
        .collect()
}

pub fn spectrum_header(scaled: bool) -> Vec<&'static str> {
    if scaled {
        vec![
            "re",
            "im",
            "re_scaled",
            "im_scaled",
            "multiplicity",
            "is_real",
            "residual",
        ]
    } else {
        vec!["re", "im", "multiplicity", "is_real", "residual"]
    }
}

pub fn spectrum_record(row: &SpectrumRow, scaled: bool) -> Vec<String> {
    let mut rec = vec![num(row.re), num(row.im)];
    if scaled {
        rec.push(num(row.re_scaled));
        rec.push(num(row.im_scaled));
    }
    rec.push(row.multiplicity.to_string());
    rec.push(row.is_real.to_string());
    rec.push(num(row.residual));
    rec
}

#[derive(Serialize)]
pub struct SpectrumDoc {
    pub m: usize,
    pub n: usize,
    pub c: f64,
    pub converged: bool,
    pub iterations: usize,
    pub eigenvalues: Vec<SpectrumRow>,
}

impl SpectrumDoc {
    pub fn new(spectrum: &Spectrum) -> Self {
        SpectrumDoc {
            m: spectrum.spec.m(),
            n: spectrum.spec.n(),
            c: spectrum.spec.c(),
            converged: spectrum.converged,
            iterations: spectrum.iterations,
            eigenvalues: spectrum_rows(spectrum),
        }
    }
}

pub fn write_json<T: Serialize, W: Write>(mut w: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()
}
