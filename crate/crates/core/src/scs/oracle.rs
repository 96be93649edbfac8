use super::{common_length, is_supersequence};
use crate::error::Result;
use crate::gate::Permutation;

/// SCS length by exhaustive enumeration of candidate strings, shortest first.
///
/// Deliberately naive: every string over the alphabet of each length from `N`
/// up to `l_max` is generated and tested. Only meant for cross-checking the
/// solver on small inputs. `Ok(None)` if nothing up to `l_max` works.
pub fn scs_brute_oracle(perms: &[Permutation], l_max: usize) -> Result<Option<usize>> {
    let n = common_length(perms)?;
    for len in n..=l_max {
        let mut s = vec![0usize; len];
        loop {
            if perms.iter().all(|t| is_supersequence(&s, t.as_slice())) {
                return Ok(Some(len));
            }
            // odometer increment
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                s[i] += 1;
                if s[i] < n {
                    break;
                }
                s[i] = 0;
            }
            if s.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Ok(None)
}
