#pragma once

#include "bench.hpp"
#include "closed_form.hpp"
#include "combinatorics.hpp"
#include "tree.hpp"
#include "verify.hpp"
