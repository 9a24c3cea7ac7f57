# 能量依赖薛定谔方程半轴散射：正问题与反问题
