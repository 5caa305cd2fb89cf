#pragma once
#include "tnarak/qlinalg.hpp"
#include "tnarak/polyring.hpp"
#include "tnarak/polyhedra.hpp"
#include "tnarak/ppfan.hpp"
#include "tnarak/specialfiber.hpp"
#include "tnarak/limits.hpp"
#include "tnarak/arithchow.hpp"
#include "tnarak/io.hpp"
