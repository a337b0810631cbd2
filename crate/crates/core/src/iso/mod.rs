// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! Permutation isomorphism between families, automorphisms, and the
//! combinatorial machinery behind uniqueness of spreading families.

pub mod census;
pub mod machinery;
pub mod search;
pub mod signature;

pub use census::{
    enumerate_hereditary_spreading, regular_reachability, uniqueness_census, CensusConfig, CensusReport,
    ReachabilityReport,
};
pub use machinery::{
    claim_check, claim_scan, i_set, i_set_lazy, reconstruct_level, reconstruction_failures, stratum,
    ClaimReport, ClaimScan,
};
pub use search::{
    automorphism_count, automorphism_report, automorphisms, find_pi_homeomorphism, AutomorphismReport,
};
pub use signature::{point_signature, signatures, twin_classes, PointSignature};
