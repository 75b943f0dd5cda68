#pragma once

#include "rembound/linalg.hpp"
#include "rembound/scalar_roots.hpp"
#include "rembound/mrf.hpp"
#include "rembound/bounds.hpp"
#include "rembound/oracle.hpp"
#include "rembound/problems.hpp"
#include "rembound/io.hpp"
