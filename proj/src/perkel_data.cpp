#include "qcbound/perkel_data.hpp"

namespace qcb::detail {

// Curated edge list of the 57-vertex, 6-regular, triangle-free
// distance-regular graph with intersection array {6,5,2;1,1,3}.
// One standard presentation takes vertices (i,j) in Z3 x Z19 and joins
// (i,j) ~ (i+1,k) whenever (k-j)^3 = 7^i mod 19; here vertex (i,j) carries
// label 3j+i, so the three 19-element color classes are the residues mod 3.
const std::array<std::pair<std::uint8_t, std::uint8_t>, 171> kPerkelEdges = {{
    {0,4}, {0,8}, {0,11}, {0,22}, {0,34}, {0,44}, {1,14}, {1,20}, {1,24},
    {1,29}, {1,36}, {1,54}, {2,15}, {2,31}, {2,40}, {2,46}, {2,48}, {2,51},
    {3,7}, {3,11}, {3,14}, {3,25}, {3,37}, {3,47}, {4,17}, {4,23}, {4,27},
    {4,32}, {4,39}, {5,18}, {5,34}, {5,43}, {5,49}, {5,51}, {5,54}, {6,10},
    {6,14}, {6,17}, {6,28}, {6,40}, {6,50}, {7,20}, {7,26}, {7,30}, {7,35},
    {7,42}, {8,21}, {8,37}, {8,46}, {8,52}, {8,54}, {9,13}, {9,17}, {9,20},
    {9,31}, {9,43}, {9,53}, {10,23}, {10,29}, {10,33}, {10,38}, {10,45}, {11,24},
    {11,40}, {11,49}, {11,55}, {12,16}, {12,20}, {12,23}, {12,34}, {12,46}, {12,56},
    {13,26}, {13,32}, {13,36}, {13,41}, {13,48}, {14,27}, {14,43}, {14,52}, {15,19},
    {15,23}, {15,26}, {15,37}, {15,49}, {16,29}, {16,35}, {16,39}, {16,44}, {16,51},
    {17,30}, {17,46}, {17,55}, {18,22}, {18,26}, {18,29}, {18,40}, {18,52}, {19,32},
    {19,38}, {19,42}, {19,47}, {19,54}, {20,33}, {20,49}, {21,25}, {21,29}, {21,32},
    {21,43}, {21,55}, {22,35}, {22,41}, {22,45}, {22,50}, {23,36}, {23,52}, {24,28},
    {24,32}, {24,35}, {24,46}, {25,38}, {25,44}, {25,48}, {25,53}, {26,39}, {26,55},
    {27,31}, {27,35}, {27,38}, {27,49}, {28,41}, {28,47}, {28,51}, {28,56}, {29,42},
    {30,34}, {30,38}, {30,41}, {30,52}, {31,44}, {31,50}, {31,54}, {32,45}, {33,37},
    {33,41}, {33,44}, {33,55}, {34,47}, {34,53}, {35,48}, {36,40}, {36,44}, {36,47},
    {37,50}, {37,56}, {38,51}, {39,43}, {39,47}, {39,50}, {40,53}, {41,54}, {42,46},
    {42,50}, {42,53}, {43,56}, {45,49}, {45,53}, {45,56}, {48,52}, {48,56}, {51,55},
}};

} // namespace qcb::detail
