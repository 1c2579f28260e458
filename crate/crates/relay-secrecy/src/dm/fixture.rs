//! JSON channel fixtures.
//!
//! Format: `{"sizes": {"x1": .., "x2": .., "yr": .., "y1": .., "y2": ..},
//! "transition": [[[[[...]]]]]}` with the transition nested as
//! `[x1][x2][yr][y1][y2]`. Errors name the offending field or index path.

use serde::Deserialize;

use super::DmChannel;
use crate::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sizes {
    x1: usize,
    x2: usize,
    yr: usize,
    y1: usize,
    y2: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    sizes: Sizes,
    transition: Vec<Vec<Vec<Vec<Vec<f64>>>>>,
}

/// Parses a channel fixture from a JSON string; `origin` labels errors
/// (typically the file path).
pub fn parse_channel(json: &str, origin: &str) -> Result<DmChannel> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let fixture: Fixture = serde_path_to_error::deserialize(de).map_err(|e| Error::Fixture {
        path: origin.to_string(),
        msg: format!("at {}: {}", e.path(), e.inner()),
    })?;
    let s = fixture.sizes;

    let mut flat = Vec::with_capacity(s.x1 * s.x2 * s.yr * s.y1 * s.y2);
    let expect = |axis: &str, idx: &str, got: usize, want: usize| -> Result<()> {
        if got != want {
            return Err(Error::Fixture {
                path: origin.to_string(),
                msg: format!(
                    "transition{idx} has length {got}, but sizes.{axis} = {want}"
                ),
            });
        }
        Ok(())
    };
    expect("x1", "", fixture.transition.len(), s.x1)?;
    for (i1, l1) in fixture.transition.iter().enumerate() {
        expect("x2", &format!("[{i1}]"), l1.len(), s.x2)?;
        for (i2, l2) in l1.iter().enumerate() {
            expect("yr", &format!("[{i1}][{i2}]"), l2.len(), s.yr)?;
            for (ir, l3) in l2.iter().enumerate() {
                expect("y1", &format!("[{i1}][{i2}][{ir}]"), l3.len(), s.y1)?;
                for (j1, l4) in l3.iter().enumerate() {
                    expect("y2", &format!("[{i1}][{i2}][{ir}][{j1}]"), l4.len(), s.y2)?;
                    flat.extend_from_slice(l4);
                }
            }
        }
    }

    DmChannel::new(s.x1, s.x2, s.yr, s.y1, s.y2, flat).map_err(|e| Error::Fixture {
        path: origin.to_string(),
        msg: e.to_string(),
    })
}

/// Loads a channel fixture from a file.
pub fn load_channel(path: &std::path::Path) -> Result<DmChannel> {
    let json = std::fs::read_to_string(path).map_err(|e| Error::Fixture {
        path: path.display().to_string(),
        msg: format!("cannot read file: {e}"),
    })?;
    parse_channel(&json, &path.display().to_string())
}
