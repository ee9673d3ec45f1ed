#pragma once

#include "engine.hpp"

namespace dolce::quality {

// Dd29: qt(x,y) holds and x instantiates phi, phi a quality leaf.
// Throws SyntaxError when phi is not quality-leaf-marked.
bool qt_of_type(const ClosedKB& ckb, const std::string& phi, const std::string& x,
                const std::string& y);

// Connectivity of a point set in the space's adjacency graph.
// Throws std::invalid_argument on an empty region or unknown points.
bool self_connected(const SpaceDef& space, const std::set<std::string>& region);

// Path reading of the color-change constraint: l and l2 lie in one connected
// component of the subgraph induced by the points attested as quales of
// `quality` at times inside `window`. Throws CloseError when an endpoint is
// not attested in the window.
bool check_color_path(const ClosedKB& ckb, const std::string& quality, const std::string& l,
                      const std::string& l2, const InstantSet& window);

void run_checks(const ClosedKB& ckb, const std::string& label, std::vector<Violation>& out);

}  // namespace dolce::quality
