use crate::apparitions::{enumerate_all, Apparition};
use crate::error::{Error, Result};
use crate::geometry::{enumerate_tetrads, SquareGeometry, Tetrad};
use crate::golden::Golden;
use crate::hexagon::{enumerate_squares, MagicSquare, SquareId};
use crate::pauli::{enumerate_triads, Triad};
use crate::states::{build_catalog, Catalog};
use crate::transforms::Relabeling;

/// Every derived object, built once from a set of reference tables.
#[derive(Clone, Debug)]
pub struct Kaleidoscope {
    pub golden: Golden,
    pub triads: Vec<Triad>,
    pub catalog: Catalog,
    pub squares: Vec<MagicSquare>,
    pub geometries: Vec<SquareGeometry>,
    pub tetrads: Vec<Tetrad>,
}

impl Kaleidoscope {
    pub fn new() -> Result<Self> {
        Self::from_golden(Golden::embedded()?)
    }

    pub fn from_golden(golden: Golden) -> Result<Self> {
        let catalog = build_catalog(&golden.eigenstates)?;
        let squares = enumerate_squares(&catalog, &golden)?;
        let geometries = squares
            .iter()
            .map(|s| SquareGeometry::build(&catalog, s))
            .collect::<Result<Vec<_>>>()?;
        let labels: Vec<_> = catalog.labels().collect();
        let tetrads = enumerate_tetrads(&catalog, &labels);
        Ok(Kaleidoscope { golden, triads: enumerate_triads(), catalog, squares, geometries, tetrads })
    }

    pub fn square(&self, id: SquareId) -> &MagicSquare {
        &self.squares[id.index()]
    }

    pub fn geometry(&self, id: SquareId) -> &SquareGeometry {
        &self.geometries[id.index()]
    }

    /// Apparitions of the given squares, grouped by square in the order
    /// given, 18-state kind first.
    pub fn apparitions(&self, ids: &[SquareId]) -> Result<Vec<Apparition>> {
        let sel: Vec<(SquareId, &SquareGeometry)> = ids.iter().map(|&id| (id, self.geometry(id))).collect();
        enumerate_all(&self.catalog, &sel)
    }

    /// The reference relabeling `S1 → target`.
    pub fn relabeling(&self, target: SquareId) -> Result<Relabeling> {
        let map = self
            .golden
            .relabelings
            .iter()
            .map(|&(l, _)| {
                self.golden
                    .relabel(target, l)
                    .map(|m| (l, m))
                    .ok_or_else(|| Error::Consistency(format!("no image of {l} in {target}")))
            })
            .collect::<Result<_>>()?;
        Ok(Relabeling { target, map })
    }
}
