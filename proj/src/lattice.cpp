// Copyright 2026 The qlmsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlm/lattice.hpp"

#include <string>

namespace qlm {

LatticeSpec build_lattice(int lx, int ly, int link_budget) {
    if (lx < 1 || ly < 1) {
        throw ConfigError("lattice dimensions must be >= 1, got " +
                          std::to_string(lx) + "x" + std::to_string(ly));
    }
    if (2 * lx * ly > link_budget) {
        throw BudgetError("lattice " + std::to_string(lx) + "x" + std::to_string(ly) +
                          " has " + std::to_string(2 * lx * ly) +
                          " links, exceeding the link budget " + std::to_string(link_budget));
    }
    return LatticeSpec{lx, ly, Boundary::Periodic};
}

SiteLinks links_at_site(const LatticeSpec& lat, SiteId site) {
    if (!lat.valid_site(site)) {
        throw ConfigError("invalid site id " + std::to_string(site));
    }
    SiteLinks r;
    r.outgoing = {lat.link(site, Dir::X), lat.link(site, Dir::Y)};
    r.incoming = {lat.link(lat.shift(site, -1, 0), Dir::X),
                  lat.link(lat.shift(site, 0, -1), Dir::Y)};
    return r;
}

std::array<OrientedLink, 4> plaquette_links(const LatticeSpec& lat, PlaqId p) {
    if (!lat.valid_plaquette(p)) {
        throw ConfigError("invalid plaquette id " + std::to_string(p));
    }
    SiteId n = p;  // anchor site
    return {OrientedLink{lat.link(n, Dir::X), +1},
            OrientedLink{lat.link(lat.shift(n, 1, 0), Dir::Y), +1},
            OrientedLink{lat.link(lat.shift(n, 0, 1), Dir::X), -1},
            OrientedLink{lat.link(n, Dir::Y), -1}};
}

std::vector<LinkId> winding_cut(const LatticeSpec& lat, Dir d, int offset) {
    std::vector<LinkId> cut;
    if (d == Dir::X) {
        int col = ((offset % lat.lx) + lat.lx) % lat.lx;
        cut.reserve(lat.ly);
        for (int y = 0; y < lat.ly; ++y) cut.push_back(lat.link(lat.site(col, y), Dir::X));
    } else {
        int row = ((offset % lat.ly) + lat.ly) % lat.ly;
        cut.reserve(lat.lx);
        for (int x = 0; x < lat.lx; ++x) cut.push_back(lat.link(lat.site(x, row), Dir::Y));
    }
    return cut;
}

PathSpec rectangular_loop(const LatticeSpec& lat, SiteId corner, int w, int h) {
    if (!lat.valid_site(corner)) {
        throw ConfigError("invalid corner site id " + std::to_string(corner));
    }
    if (w < 1 || w > lat.lx || h < 1 || h > lat.ly) {
        throw ConfigError("rectangular loop extent " + std::to_string(w) + "x" +
                          std::to_string(h) + " out of range for " +
                          std::to_string(lat.lx) + "x" + std::to_string(lat.ly));
    }
    int cx = lat.site_x(corner), cy = lat.site_y(corner);
    PathSpec path;
    path.reserve(2 * (w + h));
    for (int i = 0; i < w; ++i) path.push_back({lat.link(lat.site(cx + i, cy), Dir::X), +1});
    for (int i = 0; i < h; ++i) path.push_back({lat.link(lat.site(cx + w, cy + i), Dir::Y), +1});
    for (int i = w - 1; i >= 0; --i) path.push_back({lat.link(lat.site(cx + i, cy + h), Dir::X), -1});
    for (int i = h - 1; i >= 0; --i) path.push_back({lat.link(lat.site(cx, cy + i), Dir::Y), -1});
    return path;
}

PathSpec wrapping_loop(const LatticeSpec& lat, Dir d, int offset) {
    PathSpec path;
    if (d == Dir::X) {
        int row = ((offset % lat.ly) + lat.ly) % lat.ly;
        for (int x = 0; x < lat.lx; ++x) path.push_back({lat.link(lat.site(x, row), Dir::X), +1});
    } else {
        int col = ((offset % lat.lx) + lat.lx) % lat.lx;
        for (int y = 0; y < lat.ly; ++y) path.push_back({lat.link(lat.site(col, y), Dir::Y), +1});
    }
    return path;
}

PathSpec straight_path(const LatticeSpec& lat, SiteId from, Dir d, int length) {
    if (!lat.valid_site(from)) {
        throw ConfigError("invalid site id " + std::to_string(from));
    }
    if (length < 1) throw ConfigError("path length must be >= 1");
    PathSpec path;
    SiteId s = from;
    for (int i = 0; i < length; ++i) {
        path.push_back({lat.link(s, d), +1});
        s = d == Dir::X ? lat.shift(s, 1, 0) : lat.shift(s, 0, 1);
    }
    return path;
}

namespace {

SiteId step_site(const LatticeSpec& lat, SiteId at, const OrientedLink& ol) {
    SiteId o = lat.link_origin(ol.link);
    SiteId e = lat.link_end(ol.link);
    SiteId from = ol.orientation > 0 ? o : e;
    SiteId to = ol.orientation > 0 ? e : o;
    if (at != from) throw ConfigError("path links are not endpoint-chained");
    return to;
}

}  // namespace

std::pair<SiteId, SiteId> path_endpoints(const LatticeSpec& lat, const PathSpec& path) {
    if (path.empty()) throw ConfigError("empty path");
    SiteId start = path.front().orientation > 0 ? lat.link_origin(path.front().link)
                                                : lat.link_end(path.front().link);
    SiteId at = start;
    for (const auto& ol : path) at = step_site(lat, at, ol);
    return {start, at};
}

bool path_is_closed(const LatticeSpec& lat, const PathSpec& path) {
    if (path.empty()) return false;
    auto [start, end] = path_endpoints(lat, path);
    return start == end;
}

}  // namespace qlm
