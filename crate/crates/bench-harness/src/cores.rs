//! Physical-core detection, so scaling reports can state how much real
//! hardware sat underneath the worker counts (SMT siblings share execution
//! units and do not count).

use std::collections::BTreeSet;
use std::fs;
use std::thread;

/// Number of distinct physical cores, falling back to the logical CPU
/// count (and finally 1) where the topology cannot be read.
pub fn physical_core_count() -> usize {
    fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|info| physical_cores_from(&info))
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Count unique (physical id, core id) pairs in /proc/cpuinfo text; `None`
/// if the fields are absent (VMs often omit them).
fn physical_cores_from(cpuinfo: &str) -> Option<usize> {
    let mut cores = BTreeSet::new();
    let mut socket: Option<u64> = None;
    let mut core: Option<u64> = None;
    for line in cpuinfo.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if let (Some(s), Some(c)) = (socket, core) {
                cores.insert((s, c));
            }
            socket = None;
            core = None;
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            continue;
        };
        let parse = || value.trim().parse::<u64>().ok();
        match key.trim() {
            "physical id" => socket = parse(),
            "core id" => core = parse(),
            _ => {}
        }
    }
    if cores.is_empty() {
        None
    } else {
        Some(cores.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smt_siblings_collapse_to_their_physical_core() {
        // Two sockets, two cores each, two hardware threads per core:
        // eight processor blocks, four physical cores.
        let mut info = String::new();
        for processor in 0..8 {
            info.push_str(&format!(
                "processor\t: {processor}\nphysical id\t: {}\ncore id\t: {}\n\n",
                processor / 4,
                (processor / 2) % 2,
            ));
        }
        assert_eq!(physical_cores_from(&info), Some(4));
    }

    #[test]
    fn missing_topology_fields_defer_to_the_fallback() {
        assert_eq!(physical_cores_from("processor\t: 0\nbogomips\t: 4000\n"), None);
        assert_eq!(physical_cores_from(""), None);
        assert!(physical_core_count() >= 1);
    }
}
