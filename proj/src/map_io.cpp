/*
 * Copyright (C) 2026 The rmtrack authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <rmtrack/planner.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <sstream>

namespace rmtrack {

//==============================================================================
MapFile parse_map(std::string_view text)
{
  MapFile map;
  std::vector<std::string> grid;
  bool have_scale = false;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line))
  {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line.front() == ';')
      continue;

    if (line.rfind("name ", 0) == 0)
    {
      map.name = line.substr(5);
      continue;
    }
    if (line.rfind("scale ", 0) == 0)
    {
      try
      {
        map.scale = std::stod(line.substr(6));
      }
      catch (const std::exception&)
      {
        throw ParseError(fmt::format("bad scale line '{}'", line));
      }
      if (!(map.scale > 0.0))
        throw ParseError("map scale must be positive");
      have_scale = true;
      continue;
    }

    for (char c : line)
    {
      if (c != '.' && c != '#')
        throw ParseError(fmt::format("unexpected map character '{}'", c));
    }
    grid.push_back(line);
  }

  if (!have_scale)
    throw ParseError("map is missing its 'scale' header");
  if (grid.empty())
    throw ParseError("map has no grid rows");
  const std::size_t width = grid.front().size();
  for (const auto& row : grid)
  {
    if (row.size() != width)
      throw ParseError("map rows must all have the same width");
  }
  if (width < 2 || grid.size() < 2)
    throw ParseError("map must be at least 2x2");

  const double s = map.scale;
  map.cols = static_cast<int>(width);
  map.rows = static_cast<int>(grid.size());
  const Rect bounds{0.0, 0.0, (map.cols - 1)*s, (map.rows - 1)*s};
  map.workspace.bounds = bounds;

  // Each '#' is the square of side `scale` centered on its lattice point;
  // horizontal runs merge into one box, clipped to the bounds.
  for (int r = 0; r < map.rows; ++r)
  {
    const auto& row = grid[r];
    const double y = (map.rows - 1 - r)*s;
    int c = 0;
    while (c < map.cols)
    {
      if (row[c] != '#')
      {
        ++c;
        continue;
      }
      int end = c;
      while (end + 1 < map.cols && row[end + 1] == '#')
        ++end;

      const double x0 = std::max(bounds.xmin, (c - 0.5)*s);
      const double x1 = std::min(bounds.xmax, (end + 0.5)*s);
      const double y0 = std::max(bounds.ymin, y - 0.5*s);
      const double y1 = std::min(bounds.ymax, y + 0.5*s);
      map.workspace.obstacles.push_back(make_box(x0, y0, x1, y1));
      c = end + 1;
    }
  }
  return map;
}

} // namespace rmtrack
