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

#ifndef QLM_LATTICE_HPP
#define QLM_LATTICE_HPP

#include <array>
#include <vector>

#include "qlm/errors.hpp"

namespace qlm {

// Sites, links and plaquettes of an Lx x Ly torus are dense integer ids.
// Site (x, y) has id y*Lx + x; the two outgoing links of a site are
// link = 2*site + dir with dir 0 = x-hat, 1 = y-hat; plaquette p is anchored
// at its lower-left site and shares that site's id.

using SiteId = int;
using LinkId = int;
using PlaqId = int;

enum class Dir : int { X = 0, Y = 1 };

inline constexpr int kDefaultLinkBudget = 128;

enum class Boundary { Periodic };

struct LatticeSpec {
    int lx = 0;
    int ly = 0;
    Boundary boundary = Boundary::Periodic;

    int n_sites() const { return lx * ly; }
    int n_links() const { return 2 * lx * ly; }
    int n_plaquettes() const { return lx * ly; }

    // 1xN and Nx1 lattices wrap links onto their own origin site.
    bool degenerate() const { return lx == 1 || ly == 1; }

    SiteId site(int x, int y) const {
        return wrap(y, ly) * lx + wrap(x, lx);
    }
    int site_x(SiteId s) const { return s % lx; }
    int site_y(SiteId s) const { return s / lx; }

    SiteId shift(SiteId s, int dx, int dy) const {
        return site(site_x(s) + dx, site_y(s) + dy);
    }

    LinkId link(SiteId origin, Dir d) const {
        return 2 * origin + static_cast<int>(d);
    }
    SiteId link_origin(LinkId l) const { return l / 2; }
    Dir link_dir(LinkId l) const { return static_cast<Dir>(l % 2); }
    SiteId link_end(LinkId l) const {
        SiteId o = link_origin(l);
        return link_dir(l) == Dir::X ? shift(o, 1, 0) : shift(o, 0, 1);
    }

    bool valid_site(SiteId s) const { return s >= 0 && s < n_sites(); }
    bool valid_link(LinkId l) const { return l >= 0 && l < n_links(); }
    bool valid_plaquette(PlaqId p) const { return p >= 0 && p < n_plaquettes(); }

  private:
    static int wrap(int v, int n) {
        int r = v % n;
        return r < 0 ? r + n : r;
    }
};

LatticeSpec build_lattice(int lx, int ly, int link_budget = kDefaultLinkBudget);

struct SiteLinks {
    std::array<LinkId, 2> outgoing;  // (site, x-hat), (site, y-hat)
    std::array<LinkId, 2> incoming;  // (site - x-hat, x-hat), (site - y-hat, y-hat)
};

SiteLinks links_at_site(const LatticeSpec& lat, SiteId site);

struct OrientedLink {
    LinkId link = 0;
    int orientation = +1;  // +1 along the link direction, -1 against it

    bool operator==(const OrientedLink&) const = default;
};

// Counterclockwise plaquette anchored at its lower-left site, orientations
// (+, +, -, -): U_l1 U_l2 U_l3^dag U_l4^dag.
std::array<OrientedLink, 4> plaquette_links(const LatticeSpec& lat, PlaqId p);

// Links crossing a fixed non-contractible cut. Dir::X returns the x-directed
// links of one column (cut size Ly), Dir::Y the y-directed links of one row
// (cut size Lx).
std::vector<LinkId> winding_cut(const LatticeSpec& lat, Dir d, int offset = 0);

using PathSpec = std::vector<OrientedLink>;

// Closed counterclockwise rectangle of 2(w+h) directed links.
PathSpec rectangular_loop(const LatticeSpec& lat, SiteId corner, int w, int h);

// Straight non-contractible loop: the Lx x-links of one row (Dir::X) or the
// Ly y-links of one column (Dir::Y), all with orientation +1.
PathSpec wrapping_loop(const LatticeSpec& lat, Dir d, int offset = 0);

// Open straight segment of `length` links from `from` in direction d.
PathSpec straight_path(const LatticeSpec& lat, SiteId from, Dir d, int length);

bool path_is_closed(const LatticeSpec& lat, const PathSpec& path);

// Endpoints of an open path (start site, final site). Errors on empty or
// non-chained paths.
std::pair<SiteId, SiteId> path_endpoints(const LatticeSpec& lat, const PathSpec& path);

}  // namespace qlm

#endif
