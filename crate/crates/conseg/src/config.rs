//! Flat `key = value` pipeline configuration.
//!
//! ```text
//! # comment
//! min_pair_freq = 2
//! window = 5
//! term_fraction = 1/2
//! k = 4
//! max_iter = 100
//! min_share = 1/2
//! seed = 7          # optional: switches k-means to seeded random init
//! out_dir = results # optional
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use conseg_core::{Fraction, Init, SegmentParams, TaxonomyParams};

use crate::error::FormatError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub min_pair_freq: usize,
    pub window: usize,
    pub term_fraction: Fraction,
    pub k: usize,
    pub max_iter: usize,
    pub min_share: Fraction,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let t = TaxonomyParams::default();
        let s = SegmentParams::default();
        PipelineConfig {
            min_pair_freq: t.min_pair_freq,
            window: t.window,
            term_fraction: s.term_fraction,
            k: s.k,
            max_iter: s.max_iter,
            min_share: s.min_share,
            seed: None,
            out_dir: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in
            [("min_pair_freq", self.min_pair_freq), ("window", self.window), ("k", self.k), ("max_iter", self.max_iter)]
        {
            if v == 0 {
                return Err(format!("{name} must be at least 1"));
            }
        }
        for (name, f) in [("term_fraction", self.term_fraction), ("min_share", self.min_share)] {
            if !f.is_in_unit_interval() {
                return Err(format!("{name} must lie in (0, 1], got {f}"));
            }
        }
        Ok(())
    }

    pub fn taxonomy_params(&self) -> TaxonomyParams {
        TaxonomyParams { window: self.window, min_pair_freq: self.min_pair_freq }
    }

    pub fn segment_params(&self) -> SegmentParams {
        SegmentParams {
            term_fraction: self.term_fraction,
            k: self.k,
            max_iter: self.max_iter,
            min_share: self.min_share,
            init: match self.seed {
                Some(seed) => Init::Random { seed },
                None => Init::FarthestFirst,
            },
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
            value.parse().map_err(|_| format!("bad value `{value}` for {key}"))
        }
        match key {
            "min_pair_freq" => self.min_pair_freq = num(key, value)?,
            "window" => self.window = num(key, value)?,
            "term_fraction" => self.term_fraction = num(key, value)?,
            "k" => self.k = num(key, value)?,
            "max_iter" => self.max_iter = num(key, value)?,
            "min_share" => self.min_share = num(key, value)?,
            "seed" => self.seed = Some(num(key, value)?),
            "out_dir" => self.out_dir = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }
}

impl FromStr for PipelineConfig {
    type Err = FormatError;

    fn from_str(input: &str) -> Result<Self, FormatError> {
        let mut cfg = PipelineConfig::default();
        for (i, raw) in input.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| FormatError::at(i + 1, format!("expected key = value, found `{line}`")))?;
            cfg.set(key.trim(), value.trim()).map_err(|m| FormatError::at(i + 1, m))?;
        }
        cfg.validate().map_err(FormatError::Invalid)?;
        Ok(cfg)
    }
}

impl fmt::Display for PipelineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "min_pair_freq = {}", self.min_pair_freq)?;
        writeln!(f, "window = {}", self.window)?;
        writeln!(f, "term_fraction = {}", self.term_fraction)?;
        writeln!(f, "k = {}", self.k)?;
        writeln!(f, "max_iter = {}", self.max_iter)?;
        writeln!(f, "min_share = {}", self.min_share)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed = {seed}")?;
        }
        if let Some(dir) = &self.out_dir {
            writeln!(f, "out_dir = {}", dir.display())?;
        }
        Ok(())
    }
}
