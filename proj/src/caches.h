#pragma once

#include "twr/cuts.h"
#include "twr/geodesics.h"
#include "twr/tentacles.h"
#include "twr/visibility.h"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace twr::detail {

/// Lazily built per-polygon tables. Shared between copies of one polygon.
struct Caches {
    std::once_flag tri_once;
    Triangulation tri;

    std::once_flag geo_once;
    GeodesicIndex geo;

    std::once_flag ext_once;
    std::vector<Extension> ext;

    std::once_flag vvp_once;
    std::vector<VisibilityPolygon> vertex_vp;

    std::once_flag rr_once;
    /// index 2*v + (edge == v ? 0 : 1)
    std::vector<RestrictedRegion> restricted;

    /// base computation tables, filled on demand
    struct ExtTable {
        std::vector<double> m;      /// distance from the extension to each restricted region
        std::vector<Point> foot;    /// where that shortest path leaves the extension
    };
    std::mutex base_mx;
    std::map<std::size_t, std::shared_ptr<SourceField>> ext_field;
    std::map<std::size_t, std::shared_ptr<ExtTable>> ext_table;
    std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<VisibilityPolygon>> grid_vp;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::pair<double, Point>> grid_m;
};

}  // namespace twr::detail
