#pragma once

// Umbrella header: exact p-adic arithmetic, square classes and Hilbert
// symbols, quadratic form algebra, the density classifier, and the
// brute-force enumeration oracle.

#include "qdense/atlas.hpp"
#include "qdense/classifier.hpp"
#include "qdense/diagonalize.hpp"
#include "qdense/errors.hpp"
#include "qdense/hilbert.hpp"
#include "qdense/isotropy.hpp"
#include "qdense/oracle.hpp"
#include "qdense/padic.hpp"
#include "qdense/prime.hpp"
#include "qdense/quadratic_form.hpp"
#include "qdense/rational.hpp"
#include "qdense/render.hpp"
#include "qdense/square_class.hpp"
