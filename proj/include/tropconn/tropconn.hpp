#pragma once

#include "tropconn/errors.hpp"
#include "tropconn/rational.hpp"
#include "tropconn/linalg.hpp"
#include "tropconn/lp.hpp"
#include "tropconn/polyhedron.hpp"
#include "tropconn/fourier_motzkin.hpp"
#include "tropconn/complex.hpp"
#include "tropconn/tropical.hpp"
#include "tropconn/maps.hpp"
#include "tropconn/pipeline.hpp"
#include "tropconn/io.hpp"
