#pragma once

#include "awarekit/error.hpp"
#include "awarekit/report.hpp"
#include "awarekit/mutation.hpp"
#include "awarekit/formula.hpp"
#include "awarekit/lattice.hpp"
#include "awarekit/hms.hpp"
#include "awarekit/implicit.hpp"
#include "awarekit/fh.hpp"
#include "awarekit/properties.hpp"
#include "awarekit/semantics.hpp"
#include "awarekit/enumerate.hpp"
#include "awarekit/transforms.hpp"
#include "awarekit/equivalence.hpp"
#include "awarekit/genmodels.hpp"
#include "awarekit/lpa.hpp"
#include "awarekit/io.hpp"
#include "awarekit/fixtures.hpp"
#include "awarekit/fuzz.hpp"
