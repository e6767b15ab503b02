#pragma once

#include <svineq/bounds.hpp>
#include <svineq/error.hpp>
#include <svineq/matrix.hpp>
#include <svineq/matrix_json.hpp>
#include <svineq/parallel.hpp>
#include <svineq/rng.hpp>
#include <svineq/search.hpp>
#include <svineq/spectrum.hpp>
#include <svineq/svd.hpp>
#include <svineq/trace.hpp>
