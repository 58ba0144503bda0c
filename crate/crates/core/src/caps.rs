//! Hard limits for the exhaustive searches.

use thiserror::Error;

pub const SEARCH_CAP_ENV: &str = "DRTOOL_SEARCH_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchCaps {
    /// Generators in the bi-forest orientation search (2^n candidates).
    pub biforest_generators: usize,
    /// Corners in the generic zero/one structure search.
    pub zero_one_corners: usize,
    /// Faces in the spherical diagram search.
    pub diagram_faces: usize,
    /// Vertices in sub-LOT enumeration.
    pub sub_lot_vertices: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            biforest_generators: 25,
            zero_one_corners: 24,
            diagram_faces: 8,
            sub_lot_vertices: 24,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad {SEARCH_CAP_ENV} value {0:?}: expected N or key=N[,key=N] with keys biforest, zero_one, faces, sub_lot")]
pub struct CapParseError(pub String);

impl SearchCaps {
    /// Parses `N` (applied to every cap) or `key=N,key=N`.
    pub fn parse(text: &str) -> Result<Self, CapParseError> {
        let err = || CapParseError(text.to_string());
        let t = text.trim();
        if let Ok(n) = t.parse::<usize>() {
            return Ok(SearchCaps {
                biforest_generators: n,
                zero_one_corners: n,
                diagram_faces: n,
                sub_lot_vertices: n,
            });
        }
        let mut caps = SearchCaps::default();
        for part in t.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(err)?;
            let v: usize = v.trim().parse().map_err(|_| err())?;
            match k.trim() {
                "biforest" => caps.biforest_generators = v,
                "zero_one" => caps.zero_one_corners = v,
                "faces" => caps.diagram_faces = v,
                "sub_lot" => caps.sub_lot_vertices = v,
                _ => return Err(err()),
            }
        }
        Ok(caps)
    }

    /// Defaults, overridden by `DRTOOL_SEARCH_CAP` when set.
    pub fn from_env() -> Result<Self, CapParseError> {
        match std::env::var(SEARCH_CAP_ENV) {
            Ok(v) => SearchCaps::parse(&v),
            Err(_) => Ok(SearchCaps::default()),
        }
    }
}
