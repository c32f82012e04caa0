use crate::exact::KElement;
use crate::geometry::{map_to_sphere, unmap_with, SpaceCase, SpherePoint};
use crate::{Error, Result};

/// The labelled correspondences drawn in the horosphere figures, as
/// (boundary element, sphere point).
pub fn figure_table(case: SpaceCase) -> &'static [(&'static str, &'static str)] {
    match case {
        SpaceCase::S1I => &[
            ("0", "(-1,0)/1"),
            ("1/sqrt2", "(0,-1)/1"),
            ("2sqrt2/3", "(3,-4)/5"),
            ("3/(2sqrt2)", "(4,-3)/5"),
            ("sqrt2", "(1,0)/1"),
            ("5/(2sqrt2)", "(12,5)/13"),
            ("4sqrt2/3", "(15,8)/17"),
            ("3/sqrt2", "(4,3)/5"),
            ("5sqrt2/3", "(21,20)/29"),
            ("7/(2sqrt2)", "(20,21)/29"),
            ("2sqrt2", "(3,4)/5"),
            ("inf", "(0,1)/1"),
        ],
        SpaceCase::S1II => &[
            ("0", "(-1,1)/1"),
            ("1/sqrt2", "(-1,-1)/1"),
            ("2sqrt2/3", "(-1,-7)/5"),
            ("3/(2sqrt2)", "(1,-7)/5"),
            ("sqrt2", "(1,-1)/1"),
            ("5/(2sqrt2)", "(17,-7)/13"),
            ("4sqrt2/3", "(23,-7)/17"),
            ("3/sqrt2", "(7,-1)/5"),
            ("5sqrt2/3", "(41,-1)/29"),
            ("7/(2sqrt2)", "(41,1)/29"),
            ("2sqrt2", "(7,1)/5"),
            ("inf", "(1,1)/1"),
        ],
        SpaceCase::S1III => &[
            ("-2", "(-2,3,6)/7"),
            ("-1", "(-1,2,2)/3"),
            ("-1/2", "(-2,6,3)/7"),
            ("0", "(0,1,0)/1"),
            ("1/3", "(3,6,-2)/7"),
            ("1/2", "(2,2,-1)/3"),
            ("2/3", "(6,3,-2)/7"),
            ("1", "(1,0,0)/1"),
            ("2", "(2,-1,2)/3"),
            ("inf", "(0,0,1)/1"),
        ],
        SpaceCase::S2I => &[
            ("1", "(1,0,0)/1"),
            ("1+i", "(0,1,0)/1"),
            ("inf", "(0,0,1)/1"),
            ("i", "(-1,0,0)/1"),
            ("0", "(0,-1,0)/1"),
            ("1/(1-i)", "(0,0,-1)/1"),
        ],
        SpaceCase::S2II => &[
            ("1", "(1,1,0)/1"),
            ("1/(1-w)", "(1,-1,0)/1"),
            ("1+w", "(-1,1,0)/1"),
            ("(-1+w)/(1+w)", "(-1,-1,0)/1"),
            ("0", "(1,0,1)/1"),
            ("w/(1+w)", "(1,0,-1)/1"),
            ("w", "(-1,0,1)/1"),
            ("2/(1-w)", "(-1,0,-1)/1"),
            ("inf", "(0,1,1)/1"),
            ("(-1+w)/w", "(0,1,-1)/1"),
            ("-1/w", "(0,-1,1)/1"),
            ("(1+w)/2", "(0,-1,-1)/1"),
        ],
        SpaceCase::S2III => &[
            ("0", "(1,0,0,0)/1"),
            ("1", "(0,1,0,0)/1"),
            ("1+w", "(0,0,1,0)/1"),
            ("inf", "(0,0,0,1)/1"),
            ("2+w", "(-1,1,1,1)/2"),
            ("w", "(1,-1,1,1)/2"),
            ("-w", "(1,1,-1,1)/2"),
            ("1/(1-w)", "(1,1,1,-1)/2"),
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureEntry {
    pub z: KElement,
    pub point: SpherePoint,
}

/// Parses the table and checks Φ(z) = P and Φ⁻¹(P) = z for every entry.
pub fn figure_points(case: SpaceCase) -> Result<Vec<FigureEntry>> {
    figure_table(case)
        .iter()
        .map(|&(zs, ps)| {
            let z = KElement::parse(case.field(), zs)?;
            let point = SpherePoint::parse(case, ps)?;
            let got = map_to_sphere(&z, case)?;
            if got != point {
                return Err(Error::Invariant(format!("Φ({z}) = {got}, figure lists {point}")));
            }
            let back = unmap_with(&point, true)?;
            if back != z {
                return Err(Error::Invariant(format!("Φ⁻¹({point}) = {back}, figure lists {z}")));
            }
            Ok(FigureEntry { z, point })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_figures_reproduce() {
        let n: Vec<usize> = SpaceCase::ALL.iter().map(|&c| figure_points(c).unwrap().len()).collect();
        assert_eq!(n, vec![12, 12, 10, 6, 12, 8]);
    }
}
