#pragma once

#include <string>
#include <vector>

#include "fqnmr/config.hpp"
#include "fqnmr/csv.hpp"

namespace fqnmr {

// Built-in sweep plans. Each produces one deterministic table, rows sorted
// by the sweep axes:
//   fig4  - ensemble depolarization vs drive strength and offset from the line
//   fig5  - normalized Ramsey detuning vs line position and drive strength
//   fig6  - minimum density vs stand-off and loop size, both schemes
//   fig7  - minimum density vs external field, both schemes
//   fig8  - minimum density vs external field and pulse number
//   fig10 - minimum spin number vs sample width for three placements
const std::vector<std::string>& figure_names();

Table sweep(const RunConfig& cfg, const std::string& plan);

}  // namespace fqnmr
