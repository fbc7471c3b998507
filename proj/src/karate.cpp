#include <sstream>
#include <string>

#include "drsc/graph.hpp"

namespace drsc {
namespace {

// Zachary (1977), 78 undirected ties among 34 club members, 1-based ids.
constexpr std::string_view kKarateEdges = R"(# karate club ties
1 2
1 3
1 4
1 5
1 6
1 7
1 8
1 9
1 11
1 12
1 13
1 14
1 18
1 20
1 22
1 32
2 3
2 4
2 8
2 14
2 18
2 20
2 22
2 31
3 4
3 8
3 9
3 10
3 14
3 28
3 29
3 33
4 8
4 13
4 14
5 7
5 11
6 7
6 11
6 17
7 17
9 31
9 33
9 34
10 34
14 34
15 33
15 34
16 33
16 34
19 33
19 34
20 34
21 33
21 34
23 33
23 34
24 26
24 28
24 30
24 33
24 34
25 26
25 28
25 32
26 32
27 30
27 34
28 34
29 32
29 34
30 33
30 34
31 33
31 34
32 33
32 34
33 34
)";

// Faction membership: 1 = instructor's faction, 2 = officers' faction.
// Member 9 is placed with the officers' faction, following the factional
// split recorded from the network rather than the club later joined.
constexpr std::string_view kKarateLabels = R"(# node,faction
1,1
2,1
3,1
4,1
5,1
6,1
7,1
8,1
9,2
10,2
11,1
12,1
13,1
14,1
15,2
16,2
17,1
18,1
19,2
20,1
21,2
22,1
23,2
24,2
25,2
26,2
27,2
28,2
29,2
30,2
31,2
32,2
33,2
34,2
)";

}  // namespace

std::string_view karate_edge_list_text() { return kKarateEdges; }
std::string_view karate_labels_text() { return kKarateLabels; }

LabeledGraph karate_club() {
  return load_labeled_graph(kKarateEdges, kKarateLabels, 1);
}

}  // namespace drsc
