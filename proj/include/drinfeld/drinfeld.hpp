#ifndef DRINFELD_DRINFELD_HPP
#define DRINFELD_DRINFELD_HPP

#include "errors.hpp"
#include "ff.hpp"
#include "isogeny.hpp"
#include "modular.hpp"
#include "module.hpp"
#include "mpoly.hpp"
#include "parse.hpp"
#include "prime.hpp"
#include "ratfunc.hpp"
#include "torsion.hpp"
#include "tower.hpp"
#include "twisted.hpp"
#include "upoly.hpp"

#endif
