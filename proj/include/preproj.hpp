#pragma once
// Umbrella header.

#include "preproj/integer.hpp"
#include "preproj/rational.hpp"
#include "preproj/quiver.hpp"
#include "preproj/path.hpp"
#include "preproj/element.hpp"
#include "preproj/cyclic.hpp"
#include "preproj/order.hpp"
#include "preproj/rewrite.hpp"
#include "preproj/smith.hpp"
#include "preproj/series.hpp"
#include "preproj/constructs.hpp"
#include "preproj/homology.hpp"
#include "preproj/necklace.hpp"
#include "preproj/poisson.hpp"
#include "preproj/io.hpp"
#include "preproj/verify.hpp"
