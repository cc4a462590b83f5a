#ifndef BACKUPFILE_H
# define BACKUPFILE_H

char *find_backup_file_name (char const *file, int backup_type);

#endif
