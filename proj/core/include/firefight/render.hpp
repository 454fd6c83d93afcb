#pragma once

#include <string>

#include "firefight/engine.hpp"

namespace firefight {

/// Bounding box of burnt and protected points grown by `pad`; a 1x1
/// box at the origin (grown) when the state is empty.
Box activity_window(const FireState& s, Coord pad = 1);

/// '.' vacant, '#' burnt, 'F' protected; north (larger y) on top.
std::string render_text(const FireState& s, const Box& window);

/// Binary PGM (P5): vacant 255, protected 128, burnt 0; `scale` pixels per cell.
std::string render_pgm(const FireState& s, const Box& window, int scale = 1);

}  // namespace firefight
